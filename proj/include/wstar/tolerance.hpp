#pragma once

namespace wstar {

/// Numerical thresholds shared by the float backend.
struct Tolerance {
  double eps_eq = 1e-9;    // entrywise equality
  double eps_rank = 1e-9;  // singular values below eps_rank * sigma_max count as zero

  /// Defaults, overridden by WSTAR_EPS_EQ / WSTAR_EPS_RANK when set.
  static Tolerance from_env();
};

/// Tolerance on ||S(x) - T(y)|| when deciding composability.
inline constexpr double kComposabilityTol = 1e-7;

}  // namespace wstar
