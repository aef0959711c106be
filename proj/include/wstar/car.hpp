#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wstar/element.hpp"
#include "wstar/report.hpp"

namespace wstar {

inline constexpr int kMaxCarModes = 6;

/// c P_alpha Q_beta a*_gamma a_delta with pairwise disjoint mode sets (bit i-1 for mode i)
/// and increasing order inside each product; or the zero element.
struct CarWord {
  bool zero = false;
  int sign = 1;
  std::uint32_t alpha = 0;
  std::uint32_t beta = 0;
  std::uint32_t gamma = 0;
  std::uint32_t delta = 0;

  static CarWord zero_word() { return {true, 1, 0, 0, 0, 0}; }
  static CarWord make(int sign, const std::vector<int>& alpha, const std::vector<int>& beta,
                      const std::vector<int>& gamma, const std::vector<int>& delta);
  bool valid() const;
  int weight() const;
  /// "+P{1}Q{}C{2}A{3}" for +P_1 a*_2 a_3, "0" for zero.
  std::string to_string() const;
  /// Inverse of to_string; the sign and empty sets may be omitted ("C{2}A{3}").
  static CarWord parse(const std::string& text);
  friend bool operator==(const CarWord& a, const CarWord& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.sign == b.sign && a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma &&
           a.delta == b.delta;
  }
};

std::vector<int> modes_of(std::uint32_t mask);

/// Symbolic product: factors are regrouped mode by mode (a sign for every exchange of two
/// odd factors), multiplied as 2x2 matrix units within each mode, then put back in order.
CarWord car_mul(const CarWord& x, const CarWord& y);
CarWord car_star(const CarWord& x);

/// Jordan-Wigner matrices on C^{2^N}: a_i = Z x ... x Z x [[0,1],[0,0]] x 1 x ... x 1
/// (mode 1 is the leftmost tensor factor), so a_i a_i* = P_i projects onto occupation 0.
Element jordan_wigner_realize(const CarWord& x, int N);
/// Recovers the word from its matrix; nothing if the matrix is not a CAR word.
std::optional<CarWord> car_word_recognize(const Element& m, int N);

/// Product as printed in the source formula (index sets, six vanishing conditions and the
/// sign exponent m - i + j - p + r). Only used to report where that display diverges.
struct CarDisplay {
  CarWord word;
  bool sign_defined = true;
};
CarDisplay car_mul_display(const CarWord& x, const CarWord& y);
/// The printed x x* = P_{alpha u beta} Q_{beta u gamma} and x* x = P_{alpha u gamma} Q_{beta u delta}.
CarWord car_xxstar_display(const CarWord& x);
CarWord car_xstarx_display(const CarWord& x);

/// Every valid word (both signs) on N modes with weight <= max_weight.
std::vector<CarWord> car_words(int N, int max_weight);

/// Bit-exact agreement of car_mul / car_star with the Jordan-Wigner matrices, recognition
/// round trips and the anticommutation relations. Divergences of the printed display are
/// counted in extra fields and do not fail the report.
Report car_verify(int N, int max_weight);

}  // namespace wstar
