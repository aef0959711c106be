#pragma once

#include <string>
#include <string_view>

#include "wstar/element.hpp"

namespace wstar {

/// p_k q_l u^m (kind Positive) or p_k q_l u*^m (kind Negative),
/// with p_k = u*^k u^k and q_l = u^l u*^l.
struct MonogenicNF {
  enum class Kind { Positive, Negative };
  int k = 0;
  int l = 0;
  int m = 0;
  Kind kind = Kind::Positive;

  /// Extent of the walk of the word: +1 per u, -1 per u*.
  int walk_min() const;
  int walk_max() const;
  int walk_end() const;

  std::string to_string() const;
  /// A word in 'u' and 'U' (U = u*) representing this element.
  std::string to_word() const;
  Element evaluate(const Element& u) const;
  friend bool operator==(const MonogenicNF& a, const MonogenicNF& b) {
    return a.k == b.k && a.l == b.l && a.m == b.m && a.kind == b.kind;
  }
};

/// Reduces a nonempty word over {u, U} letter by letter with the commutation rules
///   u p_{k+1} = p_k u,  u* p_k = p_{k+1} u*,  q_{l+1} u = u q_l,  q_l u* = u* q_{l+1},
///   p_k p_l = p_max(k,l),  q_k q_l = q_max(k,l),
/// then drops factors absorbed by the power (q_l u^m = u^m for l <= m, p_k u*^m = u*^m for k <= m).
MonogenicNF monogenic_normal_form(std::string_view word);
MonogenicNF monogenic_multiply(const MonogenicNF& a, const MonogenicNF& b);

/// u^a u*^b u^c with 0 <= a <= b, 0 <= c <= b, b > 0.
struct GluskinForm {
  int a = 0;
  int b = 0;
  int c = 0;
  bool in_bounds() const { return 0 <= a && a <= b && 0 <= c && c <= b && b > 0; }
  Element evaluate(const Element& u) const;
};
GluskinForm gluskin_form(const MonogenicNF& nf);

/// Power of an element; u^0 is the identity.
Element power(const Element& u, int n);

}  // namespace wstar
