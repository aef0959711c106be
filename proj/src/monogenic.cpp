#include "wstar/monogenic.hpp"

#include <algorithm>
#include <sstream>

#include "wstar/error.hpp"

namespace wstar {

int MonogenicNF::walk_min() const { return kind == Kind::Positive ? -k : -std::max(k, m); }
int MonogenicNF::walk_max() const { return kind == Kind::Positive ? std::max(l, m) : l; }
int MonogenicNF::walk_end() const { return kind == Kind::Positive ? m : -m; }

std::string MonogenicNF::to_string() const {
  std::ostringstream os;
  os << "p" << k << " q" << l << (kind == Kind::Positive ? " u^" : " u*^") << m;
  return os.str();
}

std::string MonogenicNF::to_word() const {
  GluskinForm g = gluskin_form(*this);
  return std::string(g.a, 'u') + std::string(g.b, 'U') + std::string(g.c, 'u');
}

Element power(const Element& u, int n) {
  if (n < 0) fail(ErrorKind::InvalidInput, "negative power");
  Element out = Element::identity(u.shape(), u.backend());
  for (int i = 0; i < n; ++i) out = out * u;
  return out;
}

Element MonogenicNF::evaluate(const Element& u) const {
  Element ua = u.adjoint();
  Element p = power(ua, k) * power(u, k);
  Element q = power(u, l) * power(ua, l);
  Element tail = kind == Kind::Positive ? power(u, m) : power(ua, m);
  return p * q * tail;
}

MonogenicNF monogenic_normal_form(std::string_view word) {
  if (word.empty()) fail(ErrorKind::InvalidInput, "empty monogenic word");
  using Kind = MonogenicNF::Kind;
  MonogenicNF s;  // running p_k q_l u^{+-m}, l tracking the largest q seen
  for (char c : word) {
    if (c != 'u' && c != 'U') fail(ErrorKind::InvalidInput, std::string("bad letter '") + c + "'");
    bool up = c == 'u';
    if (s.kind == Kind::Positive) {
      if (up) {
        s.m += 1;
        s.l = std::max(s.l, s.m);
      } else if (s.m >= 1) {
        // u^m u* = u^{m-1} q_1 = q_m u^{m-1}
        s.l = std::max(s.l, s.m);
        s.m -= 1;
      } else {
        s.kind = Kind::Negative;
        s.m = 1;
        s.k = std::max(s.k, 1);
      }
    } else {
      if (!up) {
        s.m += 1;
        s.k = std::max(s.k, s.m);
      } else if (s.m >= 1) {
        // u*^m u = u*^{m-1} p_1 = p_m u*^{m-1}
        s.k = std::max(s.k, s.m);
        s.m -= 1;
        if (s.m == 0) s.kind = Kind::Positive;
      } else {
        s.kind = Kind::Positive;
        s.m = 1;
        s.l = std::max(s.l, 1);
      }
    }
  }
  if (s.kind == Kind::Positive && s.m > 0 && s.l <= s.m) s.l = 0;
  if (s.kind == Kind::Negative && s.k <= s.m) s.k = 0;
  return s;
}

MonogenicNF monogenic_multiply(const MonogenicNF& a, const MonogenicNF& b) {
  return monogenic_normal_form(a.to_word() + b.to_word());
}

GluskinForm gluskin_form(const MonogenicNF& nf) {
  int lo = nf.walk_min();
  int hi = nf.walk_max();
  return {hi, hi - lo, nf.walk_end() - lo};
}

Element GluskinForm::evaluate(const Element& u) const {
  return power(u, a) * power(u.adjoint(), b) * power(u, c);
}

}  // namespace wstar
