#include <functional>

#include "test_support.hpp"
#include "wstar/cuntz.hpp"
#include "wstar/error.hpp"

using namespace wstar;

namespace {

/// Partial map on words of length <= max_len: strip the prefix beta, prepend alpha.
std::optional<MultiIndex> oracle_act(const CuntzWord& w, const MultiIndex& x) {
  if (w.zero) return std::nullopt;
  if (w.beta.size() > x.size() || !std::equal(w.beta.begin(), w.beta.end(), x.begin())) return std::nullopt;
  MultiIndex out = w.alpha;
  out.insert(out.end(), x.begin() + long(w.beta.size()), x.end());
  return out;
}

std::vector<MultiIndex> all_words(int N, int len) {
  std::vector<MultiIndex> out = {{}};
  std::vector<MultiIndex> layer = {{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<MultiIndex> next;
    for (const auto& w : layer)
      for (int a = 1; a <= N; ++a) {
        MultiIndex v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = next;
  }
  return out;
}

/// Two words agree as operators when they act identically on all long enough strings.
bool same_operator(const CuntzWord& a, const CuntzWord& b, int N, int len) {
  for (const auto& x : all_words(N, len)) {
    if (x.size() < std::size_t(len)) continue;
    if (oracle_act(a, x) != oracle_act(b, x)) return false;
  }
  return true;
}

std::optional<MultiIndex> act_product(const CuntzWord& a, const CuntzWord& b, const MultiIndex& x) {
  auto y = oracle_act(b, x);
  if (!y) return std::nullopt;
  return oracle_act(a, *y);
}

}  // namespace

TEST_CASE("prefix rule examples") {
  CuntzWord a = CuntzWord::parse("s[1]S[2,1]");
  CuntzWord b = CuntzWord::parse("s[2]S[3]");
  CuntzWord p = cuntz_mul(a, b);
  CHECK(p.to_string() == "s[1]S[3,1]");
  for (const auto& x : all_words(3, 4))
    if (x.size() == 4) CHECK(act_product(a, b, x) == oracle_act(p, x));

  CHECK(cuntz_mul(CuntzWord::parse("s[1]S[2]"), CuntzWord::parse("s[3]S[1]")).zero);
  CuntzWord unit = CuntzWord::parse("s[]S[]");
  CHECK(cuntz_mul(unit, a) == a);
  CHECK(cuntz_mul(a, unit) == a);
}

TEST_CASE("parse and print round trip") {
  for (const auto& text : {"s[1,2]S[3]", "s[]S[2]", "0", "s[1]S[]"})
    CHECK(CuntzWord::parse(text).to_string() == text);
  CHECK_THROWS_AS(CuntzWord::parse("t[1]"), Error);
}

TEST_CASE("star and products agree with the action on words") {
  const int N = 2, depth = 3, len = 6;
  std::vector<CuntzWord> words = cuntz_words(N, depth);
  for (const auto& a : words) {
    CHECK(cuntz_star(cuntz_star(a)) == a);
    for (const auto& b : words) {
      CuntzWord p = cuntz_mul(a, b);
      bool ok = true;
      for (const auto& x : all_words(N, len))
        if (x.size() == std::size_t(len) && act_product(a, b, x) != oracle_act(p, x)) ok = false;
      CHECK(ok);
    }
  }
}

TEST_CASE("w w* w = w on all short words") {
  for (const auto& w : cuntz_words(3, 3)) CHECK(cuntz_mul(cuntz_mul(w, cuntz_star(w)), w) == w);
}

TEST_CASE("exhaustive axiom check") {
  CHECK(cuntz_axiom_check(2, 3).pass());
  Report unit = cuntz_axiom_check(2, 0);
  CHECK(unit.pass());
  CHECK(cuntz_words(2, 0).size() == 1);
}

TEST_CASE("one generator gives the Toeplitz semigroup") {
  CHECK(toeplitz_agrees_with_monogenic(4).pass());
  for (const auto& w : cuntz_words(1, 4)) CHECK(same_operator(w, cuntz_mul(cuntz_mul(w, cuntz_star(w)), w), 1, 6));
}
