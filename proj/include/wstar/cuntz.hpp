#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wstar/report.hpp"

namespace wstar {

using MultiIndex = std::vector<int>;

/// s_alpha s_beta^* in the Cuntz inverse semigroup, or the zero element.
struct CuntzWord {
  bool zero = false;
  MultiIndex alpha;
  MultiIndex beta;

  static CuntzWord zero_word() { return {true, {}, {}}; }
  /// "s[1,2]S[3]" for s_{12} s_3^*, "0" for zero.
  std::string to_string() const;
  static CuntzWord parse(const std::string& text);
  friend bool operator==(const CuntzWord& a, const CuntzWord& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

/// Product of two words: the right part of the first word cancels against the left part
/// of the second when one is a prefix of the other; otherwise the product is zero.
CuntzWord cuntz_mul(const CuntzWord& a, const CuntzWord& b);
CuntzWord cuntz_star(const CuntzWord& a);

/// Action on finite words over {1..N}: s_alpha s_beta^* strips the prefix beta and
/// prepends alpha. Nothing when beta is not a prefix. Faithful on long enough words.
std::optional<MultiIndex> cuntz_act(const CuntzWord& a, const MultiIndex& w);

/// Every word s_alpha s_beta^* with letters in 1..N and |alpha| + |beta| <= depth.
std::vector<CuntzWord> cuntz_words(int N, int depth);

/// Exhaustive check over cuntz_words(N, depth) plus zero: associativity, the inverse
/// laws, commuting idempotents, star anti-multiplicativity and agreement with the action
/// on words.
Report cuntz_axiom_check(int N, int depth);

/// For N = 1 the words s^a s*^b correspond to monogenic normal forms of an isometry
/// (p_k = 1); checks that products agree under this correspondence.
Report toeplitz_agrees_with_monogenic(int depth);

}  // namespace wstar
