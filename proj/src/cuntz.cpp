#include "wstar/cuntz.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "wstar/error.hpp"
#include "wstar/monogenic.hpp"

namespace wstar {

namespace {

bool is_prefix(const MultiIndex& pre, const MultiIndex& w) {
  return pre.size() <= w.size() && std::equal(pre.begin(), pre.end(), w.begin());
}

MultiIndex concat(const MultiIndex& a, MultiIndex::const_iterator from, MultiIndex::const_iterator to) {
  MultiIndex out = a;
  out.insert(out.end(), from, to);
  return out;
}

std::string list(const MultiIndex& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << "]";
  return os.str();
}

MultiIndex parse_list(const std::string& text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != '[') fail(ErrorKind::InvalidInput, "expected '['");
  ++pos;
  MultiIndex out;
  while (pos < text.size() && text[pos] != ']') {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(text.substr(pos), &used);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "bad index in Cuntz word '" + text + "'");
    }
    if (v < 1) fail(ErrorKind::InvalidInput, "Cuntz indices start at 1");
    out.push_back(v);
    pos += used;
    if (pos < text.size() && text[pos] == ',') ++pos;
  }
  if (pos >= text.size()) fail(ErrorKind::InvalidInput, "unterminated index list");
  ++pos;
  return out;
}

}  // namespace

std::string CuntzWord::to_string() const {
  if (zero) return "0";
  return "s" + list(alpha) + "S" + list(beta);
}

CuntzWord CuntzWord::parse(const std::string& text) {
  if (text == "0") return zero_word();
  std::size_t pos = 0;
  if (text.empty() || text[pos] != 's') fail(ErrorKind::InvalidInput, "Cuntz word starts with 's'");
  ++pos;
  CuntzWord w;
  w.alpha = parse_list(text, pos);
  if (pos >= text.size() || text[pos] != 'S') fail(ErrorKind::InvalidInput, "expected 'S'");
  ++pos;
  w.beta = parse_list(text, pos);
  if (pos != text.size()) fail(ErrorKind::InvalidInput, "trailing text in Cuntz word");
  return w;
}

CuntzWord cuntz_mul(const CuntzWord& a, const CuntzWord& b) {
  if (a.zero || b.zero) return CuntzWord::zero_word();
  // (s_a s_b*)(s_{b g} s_d*) = s_{a g} s_d*
  if (is_prefix(a.beta, b.alpha))
    return {false, concat(a.alpha, b.alpha.begin() + a.beta.size(), b.alpha.end()), b.beta};
  // (s_a s_{g b'}*)(s_g s_d*) = s_a s_{d b'}*
  if (is_prefix(b.alpha, a.beta))
    return {false, a.alpha, concat(b.beta, a.beta.begin() + b.alpha.size(), a.beta.end())};
  return CuntzWord::zero_word();
}

CuntzWord cuntz_star(const CuntzWord& a) {
  if (a.zero) return a;
  return {false, a.beta, a.alpha};
}

std::optional<MultiIndex> cuntz_act(const CuntzWord& a, const MultiIndex& w) {
  if (a.zero || !is_prefix(a.beta, w)) return std::nullopt;
  return concat(a.alpha, w.begin() + a.beta.size(), w.end());
}

namespace {

void all_indices(int N, int len, std::vector<MultiIndex>& out) {
  MultiIndex cur(len, 1);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (int i = 1; i <= N; ++i) {
      cur[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<CuntzWord> cuntz_words(int N, int depth) {
  if (N < 1 || depth < 0) fail(ErrorKind::InvalidInput, "need N >= 1 and depth >= 0");
  std::vector<std::vector<MultiIndex>> by_len(depth + 1);
  for (int len = 0; len <= depth; ++len) all_indices(N, len, by_len[len]);
  std::vector<CuntzWord> out;
  for (int t = 0; t <= depth; ++t)
    for (int la = 0; la <= t; ++la)
      for (const auto& a : by_len[la])
        for (const auto& b : by_len[t - la]) out.push_back({false, a, b});
  return out;
}

Report cuntz_axiom_check(int N, int depth) {
  Report r("cuntz-axioms", 0.0);
  r.params = {{"N", N}, {"depth", depth}};
  std::vector<CuntzWord> words = cuntz_words(N, depth);
  words.push_back(CuntzWord::zero_word());
  auto flag = [&](const char* law, std::size_t i, bool ok) { r.record(law, i, ok ? 0.0 : 1.0); };

  for (std::size_t i = 0; i < words.size(); ++i) {
    const CuntzWord& w = words[i];
    CuntzWord ws = cuntz_star(w);
    flag("w w* w = w", i, cuntz_mul(cuntz_mul(w, ws), w) == w);
    flag("w* w w* = w*", i, cuntz_mul(cuntz_mul(ws, w), ws) == ws);
    flag("star involutive", i, cuntz_star(ws) == w);
  }

  std::vector<MultiIndex> probes;
  all_indices(N, 2 * depth, probes);
  std::size_t pair_index = 0;
  for (const auto& a : words)
    for (const auto& b : words) {
      CuntzWord ab = cuntz_mul(a, b);
      flag("(ab)* = b* a*", pair_index, cuntz_star(ab) == cuntz_mul(cuntz_star(b), cuntz_star(a)));
      bool agree = true;
      for (const auto& w : probes) {
        std::optional<MultiIndex> lhs = cuntz_act(ab, w);
        std::optional<MultiIndex> inner = cuntz_act(b, w);
        std::optional<MultiIndex> rhs = inner ? cuntz_act(a, *inner) : std::nullopt;
        if (lhs != rhs) {
          agree = false;
          break;
        }
      }
      flag("action on words", pair_index, agree);
      bool a_idem = !a.zero && a.alpha == a.beta;
      bool b_idem = !b.zero && b.alpha == b.beta;
      if (a_idem && b_idem) flag("idempotents commute", pair_index, ab == cuntz_mul(b, a));
      ++pair_index;
    }

  std::size_t triple_index = 0;
  for (const auto& a : words)
    for (const auto& b : words) {
      CuntzWord ab = cuntz_mul(a, b);
      for (const auto& c : words) {
        flag("associativity", triple_index, cuntz_mul(ab, c) == cuntz_mul(a, cuntz_mul(b, c)));
        ++triple_index;
      }
    }
  r.extra["words"] = words.size();
  r.extra["violations"] = r.failures.size();
  return r;
}

Report toeplitz_agrees_with_monogenic(int depth) {
  Report r("toeplitz-vs-monogenic", 0.0);
  r.params = {{"depth", depth}};
  std::vector<CuntzWord> words = cuntz_words(1, depth);
  // s^a s*^b walks up a steps then down b steps: maximum a, end a - b. For an isometry
  // p_k = 1, so the maximum and end point of the walk determine the element.
  auto word_of = [](const CuntzWord& w) {
    return std::string(w.alpha.size(), 'u') + std::string(w.beta.size(), 'U');
  };
  std::size_t idx = 0;
  for (const auto& a : words)
    for (const auto& b : words) {
      std::string word = word_of(a) + word_of(b);
      if (word.empty()) continue;
      CuntzWord ab = cuntz_mul(a, b);
      MonogenicNF nf = monogenic_normal_form(word);
      bool ok = !ab.zero && nf.walk_max() == int(ab.alpha.size()) &&
                nf.walk_end() == int(ab.alpha.size()) - int(ab.beta.size());
      r.record("product", idx++, ok ? 0.0 : 1.0);
    }
  return r;
}

}  // namespace wstar
