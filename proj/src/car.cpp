#include "wstar/car.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "wstar/error.hpp"

namespace wstar {

namespace {

// Single-mode factors as 2x2 matrix units e_{row,col}.
enum Factor { kP = 0, kQ = 1, kC = 2, kA = 3 };
constexpr int kRow[4] = {0, 1, 1, 0};
constexpr int kCol[4] = {0, 1, 0, 1};

bool odd(int f) { return f == kC || f == kA; }

int factor_of(int row, int col) {
  if (row == 0 && col == 0) return kP;
  if (row == 1 && col == 1) return kQ;
  if (row == 1 && col == 0) return kC;
  return kA;
}

struct Term {
  int factor;
  int mode;
};

std::vector<Term> factors(const CarWord& w) {
  std::vector<Term> out;
  for (int m : modes_of(w.alpha)) out.push_back({kP, m});
  for (int m : modes_of(w.beta)) out.push_back({kQ, m});
  for (int m : modes_of(w.gamma)) out.push_back({kC, m});
  for (int m : modes_of(w.delta)) out.push_back({kA, m});
  return out;
}

CarWord normalize(std::vector<Term> t, int sign) {
  // Stable insertion sort by mode; exchanging two odd factors costs a sign.
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1].mode > t[j].mode; --j) {
      if (odd(t[j - 1].factor) && odd(t[j].factor)) sign = -sign;
      std::swap(t[j - 1], t[j]);
    }
  std::vector<Term> merged;
  for (const Term& f : t) {
    if (!merged.empty() && merged.back().mode == f.mode) {
      int prev = merged.back().factor;
      if (kCol[prev] != kRow[f.factor]) return CarWord::zero_word();
      merged.back().factor = factor_of(kRow[prev], kCol[f.factor]);
    } else {
      merged.push_back(f);
    }
  }
  CarWord w;
  w.sign = sign;
  // Odd factors are now in mode order; move every a* in front of the a's below it.
  int annihilators_seen = 0;
  for (const Term& f : merged) {
    std::uint32_t bit = 1u << (f.mode - 1);
    switch (f.factor) {
      case kP: w.alpha |= bit; break;
      case kQ: w.beta |= bit; break;
      case kC:
        w.gamma |= bit;
        if (annihilators_seen % 2) w.sign = -w.sign;
        break;
      case kA:
        w.delta |= bit;
        ++annihilators_seen;
        break;
    }
  }
  return w;
}

void check_modes(int N) {
  if (N < 1 || N > kMaxCarModes)
    fail(ErrorKind::DimensionTooLarge, "CAR realization supports 1 <= N <= " +
                                           std::to_string(kMaxCarModes));
}

std::string set_text(std::uint32_t mask) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int m : modes_of(mask)) {
    os << (first ? "" : ",") << m;
    first = false;
  }
  os << "}";
  return os.str();
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

struct JwOperators {
  std::vector<QMatrix> a, ad, p, q;  // index mode - 1
};

const JwOperators& jw_operators(int N) {
  static std::mutex mu;
  static std::map<int, JwOperators> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  QMatrix sigma(2, 2);
  sigma(0, 1) = GaussRat(1);
  QMatrix z(2, 2);
  z(0, 0) = GaussRat(1);
  z(1, 1) = GaussRat(-1);
  QMatrix one = QMatrix::identity(2);
  JwOperators ops;
  for (int i = 1; i <= N; ++i) {
    QMatrix m = i == 1 ? sigma : z;
    for (int k = 2; k <= N; ++k) m = kron(m, k < i ? z : (k == i ? sigma : one));
    ops.a.push_back(m);
    ops.ad.push_back(m.adjoint());
    ops.p.push_back(m * m.adjoint());
    ops.q.push_back(m.adjoint() * m);
  }
  return cache.emplace(N, std::move(ops)).first->second;
}

QMatrix realize_matrix(const CarWord& x, int N) {
  check_modes(N);
  int dim = 1 << N;
  if (x.zero) return QMatrix(dim, dim);
  if (!x.valid() || ((x.alpha | x.beta | x.gamma | x.delta) >> N) != 0)
    fail(ErrorKind::InvalidInput, "CAR word " + x.to_string() + " does not fit N modes");
  const JwOperators& ops = jw_operators(N);
  QMatrix m = QMatrix::identity(dim).scaled(GaussRat(x.sign));
  for (int i : modes_of(x.alpha)) m = m * ops.p[i - 1];
  for (int i : modes_of(x.beta)) m = m * ops.q[i - 1];
  for (int i : modes_of(x.gamma)) m = m * ops.ad[i - 1];
  for (int i : modes_of(x.delta)) m = m * ops.a[i - 1];
  return m;
}

}  // namespace

std::vector<int> modes_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) out.push_back(i + 1);
  return out;
}

CarWord CarWord::make(int sign, const std::vector<int>& alpha, const std::vector<int>& beta,
                      const std::vector<int>& gamma, const std::vector<int>& delta) {
  auto mask = [](const std::vector<int>& v) {
    std::uint32_t m = 0;
    for (int i : v) {
      if (i < 1 || i > 32) fail(ErrorKind::InvalidInput, "CAR mode out of range");
      if (m & (1u << (i - 1))) fail(ErrorKind::InvalidInput, "repeated CAR mode");
      m |= 1u << (i - 1);
    }
    return m;
  };
  if (sign != 1 && sign != -1) fail(ErrorKind::InvalidInput, "CAR sign must be +1 or -1");
  CarWord w{false, sign, mask(alpha), mask(beta), mask(gamma), mask(delta)};
  if (!w.valid()) fail(ErrorKind::InvalidInput, "CAR mode sets must be disjoint");
  return w;
}

bool CarWord::valid() const {
  if (zero) return true;
  return (sign == 1 || sign == -1) && !(alpha & beta) && !(alpha & gamma) && !(alpha & delta) &&
         !(beta & gamma) && !(beta & delta) && !(gamma & delta);
}

int CarWord::weight() const {
  return std::popcount(alpha) + std::popcount(beta) + std::popcount(gamma) + std::popcount(delta);
}

std::string CarWord::to_string() const {
  if (zero) return "0";
  return std::string(sign > 0 ? "+" : "-") + "P" + set_text(alpha) + "Q" + set_text(beta) + "C" +
         set_text(gamma) + "A" + set_text(delta);
}

CarWord CarWord::parse(const std::string& text) {
  if (text == "0") return zero_word();
  std::size_t pos = 0;
  int sign = 1;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    sign = text[0] == '+' ? 1 : -1;
    ++pos;
  }
  std::vector<std::vector<int>> sets;
  for (char tag : {'P', 'Q', 'C', 'A'}) {
    if (pos + 1 >= text.size() || text[pos] != tag || text[pos + 1] != '{') {
      sets.emplace_back();
      continue;
    }
    pos += 2;
    std::vector<int> modes;
    while (pos < text.size() && text[pos] != '}') {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(text.substr(pos), &used);
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidInput, "bad mode in CAR word '" + text + "'");
      }
      if (!modes.empty() && v <= modes.back())
        fail(ErrorKind::InvalidInput, "CAR modes must be increasing");
      modes.push_back(v);
      pos += used;
      if (pos < text.size() && text[pos] == ',') ++pos;
    }
    if (pos >= text.size()) fail(ErrorKind::InvalidInput, "unterminated CAR mode set");
    ++pos;
    sets.push_back(std::move(modes));
  }
  if (pos != text.size() || text.empty())
    fail(ErrorKind::InvalidInput, "cannot parse CAR word '" + text + "'");
  return make(sign, sets[0], sets[1], sets[2], sets[3]);
}

CarWord car_mul(const CarWord& x, const CarWord& y) {
  if (x.zero || y.zero) return CarWord::zero_word();
  std::vector<Term> t = factors(x);
  std::vector<Term> ty = factors(y);
  t.insert(t.end(), ty.begin(), ty.end());
  return normalize(std::move(t), x.sign * y.sign);
}

CarWord car_star(const CarWord& x) {
  if (x.zero) return x;
  std::vector<Term> t = factors(x);
  std::reverse(t.begin(), t.end());
  for (Term& f : t)
    if (f.factor == kC) f.factor = kA;
    else if (f.factor == kA) f.factor = kC;
  return normalize(std::move(t), x.sign);
}

Element jordan_wigner_realize(const CarWord& x, int N) {
  return Element(Element::ExactBlocks{realize_matrix(x, N)});
}

std::optional<CarWord> car_word_recognize(const Element& m, int N) {
  check_modes(N);
  int dim = 1 << N;
  if (!m.is_exact() || m.shape() != Shape{dim})
    fail(ErrorKind::ShapeMismatch, "CAR recognition expects one exact block of size 2^N");
  const QMatrix& a = m.exact_blocks()[0];
  if (a.is_zero()) return CarWord::zero_word();
  int r0 = -1, c0 = -1;
  for (int r = 0; r < dim && r0 < 0; ++r)
    for (int c = 0; c < dim; ++c)
      if (!a(r, c).is_zero()) {
        r0 = r;
        c0 = c;
        break;
      }
  CarWord w;
  for (int mode = 1; mode <= N; ++mode) {
    int bit = 1 << (N - mode);
    int rb = (r0 & bit) ? 1 : 0;
    int cb = (c0 & bit) ? 1 : 0;
    std::uint32_t mbit = 1u << (mode - 1);
    if (rb != cb) {
      (factor_of(rb, cb) == kA ? w.delta : w.gamma) |= mbit;
    } else if (a(r0 ^ bit, c0 ^ bit).is_zero()) {
      (rb == 0 ? w.alpha : w.beta) |= mbit;
    }
  }
  QMatrix candidate = realize_matrix(w, N);
  if (candidate == a) return w;
  if (candidate.scaled(GaussRat(-1)) == a) {
    w.sign = -1;
    return w;
  }
  return std::nullopt;
}

namespace {

int position(std::uint32_t mask, int mode) {
  std::vector<int> m = modes_of(mask);
  return int(std::find(m.begin(), m.end(), mode) - m.begin()) + 1;
}

}  // namespace

CarDisplay car_mul_display(const CarWord& x, const CarWord& y) {
  if (x.zero || y.zero) return {CarWord::zero_word(), true};
  if ((x.alpha & y.gamma) || (x.beta & y.delta) || (x.alpha & y.beta) || (x.beta & y.alpha) ||
      (x.gamma & y.gamma) || (x.delta & y.delta))
    return {CarWord::zero_word(), true};
  CarWord w;
  w.alpha = (x.alpha | y.alpha | (x.delta & y.gamma)) & ~(y.delta | x.gamma);
  w.beta = (x.beta | y.beta | (y.delta & x.gamma)) & ~(x.delta | y.gamma);
  w.gamma = (x.gamma | y.gamma) & ~(x.delta | y.delta);
  w.delta = (x.delta | y.delta) & ~(x.gamma | y.gamma);
  std::uint32_t gd = x.gamma & y.delta;
  std::uint32_t dg = x.delta & y.gamma;
  CarDisplay out{w, std::popcount(gd) <= 1 && std::popcount(dg) <= 1};
  int exponent = 0;
  if (gd) {
    int mode = modes_of(gd)[0];
    exponent += std::popcount(x.gamma) - position(x.gamma, mode) + position(y.delta, mode);
  }
  if (dg) {
    int mode = modes_of(dg)[0];
    exponent += -position(x.delta, mode) + position(y.gamma, mode);
  }
  out.word.sign = x.sign * y.sign * ((exponent % 2 == 0) ? 1 : -1);
  return out;
}

CarWord car_xxstar_display(const CarWord& x) {
  if (x.zero) return x;
  return {false, 1, x.alpha | x.beta, x.beta | x.gamma, 0, 0};
}

CarWord car_xstarx_display(const CarWord& x) {
  if (x.zero) return x;
  return {false, 1, x.alpha | x.gamma, x.beta | x.delta, 0, 0};
}

std::vector<CarWord> car_words(int N, int max_weight) {
  check_modes(N);
  std::vector<CarWord> out;
  int total = 1;
  for (int i = 0; i < N; ++i) total *= 5;
  for (int code = 0; code < total; ++code) {
    CarWord w;
    int c = code;
    for (int mode = 1; mode <= N; ++mode, c /= 5) {
      std::uint32_t bit = 1u << (mode - 1);
      switch (c % 5) {
        case 1: w.alpha |= bit; break;
        case 2: w.beta |= bit; break;
        case 3: w.gamma |= bit; break;
        case 4: w.delta |= bit; break;
        default: break;
      }
    }
    if (w.weight() > max_weight) continue;
    out.push_back(w);
    w.sign = -1;
    out.push_back(w);
  }
  return out;
}

Report car_verify(int N, int max_weight) {
  Report r("car-verify", 0.0);
  r.params = {{"N", N}, {"max_weight", max_weight}};
  std::vector<CarWord> words = car_words(N, max_weight);
  std::vector<QMatrix> mats;
  for (const auto& w : words) mats.push_back(realize_matrix(w, N));
  std::unordered_map<std::string, QMatrix> cache;
  auto realized = [&](const CarWord& w) -> const QMatrix& {
    std::string k = w.to_string();
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, realize_matrix(w, N)).first;
    return it->second;
  };
  auto flag = [&](const char* law, std::size_t i, bool ok) { r.record(law, i, ok ? 0.0 : 1.0); };

  std::size_t xxstar_div = 0, xstarx_div = 0;
  std::vector<std::string> examples;
  for (std::size_t i = 0; i < words.size(); ++i) {
    CarWord s = car_star(words[i]);
    flag("star", i, realized(s) == mats[i].adjoint());
    auto back = car_word_recognize(Element(Element::ExactBlocks{mats[i]}), N);
    flag("recognize", i, back && *back == words[i]);
    CarWord xxs = car_mul(words[i], s);
    CarWord xsx = car_mul(s, words[i]);
    if (!(car_xxstar_display(words[i]) == xxs)) {
      ++xxstar_div;
      if (examples.size() < 6)
        examples.push_back("x x* for " + words[i].to_string() + ": printed " +
                           car_xxstar_display(words[i]).to_string() + ", oracle " + xxs.to_string());
    }
    if (!(car_xstarx_display(words[i]) == xsx)) ++xstarx_div;
  }

  std::size_t set_div = 0, sign_div = 0, sign_undefined = 0, idx = 0;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j, ++idx) {
      CarWord xy = car_mul(words[i], words[j]);
      QMatrix product = mats[i] * mats[j];
      flag("product vs Jordan-Wigner", idx, realized(xy) == product);
      CarDisplay d = car_mul_display(words[i], words[j]);
      CarWord unsigned_d = d.word, unsigned_xy = xy;
      unsigned_d.sign = unsigned_xy.sign = 1;
      if (!(unsigned_d == unsigned_xy)) {
        ++set_div;
        if (examples.size() < 12)
          examples.push_back(words[i].to_string() + " * " + words[j].to_string() + ": printed " +
                             d.word.to_string() + ", oracle " + xy.to_string());
      } else if (!xy.zero) {
        if (!d.sign_defined) ++sign_undefined;
        else if (d.word.sign != xy.sign) ++sign_div;
      }
    }

  // Anticommutation relations on the matrices and their symbolic counterparts.
  const JwOperators& ops = jw_operators(N);
  QMatrix one = QMatrix::identity(1 << N);
  QMatrix zero(1 << N, 1 << N);
  std::size_t rel = 0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j, ++rel) {
      const QMatrix& ai = ops.a[i - 1];
      const QMatrix& aj = ops.a[j - 1];
      flag("a_i a_j* + a_j* a_i", rel, ai * ops.ad[j - 1] + ops.ad[j - 1] * ai == (i == j ? one : zero));
      flag("a_i a_j + a_j a_i", rel, ai * aj + aj * ai == zero);
      CarWord wi = CarWord::make(1, {}, {}, {}, {i});
      CarWord wj_star = CarWord::make(1, {}, {}, {j}, {});
      if (i == j) {
        flag("a a* = P", rel, car_mul(wi, wj_star) == CarWord::make(1, {i}, {}, {}, {}));
        flag("a* a = Q", rel, car_mul(wj_star, wi) == CarWord::make(1, {}, {i}, {}, {}));
      } else {
        CarWord lhs = car_mul(wi, wj_star);
        CarWord rhs = car_mul(wj_star, wi);
        rhs.sign = -rhs.sign;
        flag("a_i a_j* = -a_j* a_i", rel, lhs == rhs);
      }
    }

  r.extra["words"] = words.size();
  r.extra["display_set_divergences"] = set_div;
  r.extra["display_sign_divergences"] = sign_div;
  r.extra["display_sign_undefined"] = sign_undefined;
  r.extra["display_xxstar_divergences"] = xxstar_div;
  r.extra["display_xstarx_divergences"] = xstarx_div;
  r.extra["display_examples"] = examples;
  return r;
}

}  // namespace wstar
