#pragma once

#include <vector>

#include <json.hpp>

#include "wstar/groupoid.hpp"

namespace wstar {

/// Hilbert space M s of a positive functional with <x|y> = tr(rho x* y), s the support.
struct GnsSpace {
  Functional state;
  Element support;
  std::vector<Element> basis;  // orthonormal

  int dim() const { return int(basis.size()); }
  cplx inner(const Element& x, const Element& y) const;
  Eigen::VectorXcd coordinates(const Element& xi) const;
  Element vector(const Eigen::VectorXcd& c) const;
};

/// Orthonormalizes {e_ij s} through the Gram matrix, dropping eigenvalues below the rank cutoff.
/// dim = sum_b n_b rank_b(s).
GnsSpace gns_space(const Functional& w, const Tolerance& tol = {});
/// Matrix of left multiplication by x in the orthonormal basis.
Eigen::MatrixXcd gns_rep(const Element& x, const GnsSpace& h);

/// Unitary x s -> x s u* from the space of w onto the space of I_star(u, w).
struct FiberMap {
  GnsSpace source;
  GnsSpace target;
  Element u;
  Eigen::MatrixXcd matrix;  // target coordinates x source coordinates

  Element apply(const Element& xi) const;
};

/// Uses the given spaces (and their bases) for source and target.
/// Requires u*u = support of the source and the target state equal to I_star(u, source).
FiberMap fiber_map_between(const Element& u, const GnsSpace& source, const GnsSpace& target,
                           const Tolerance& tol = {});
FiberMap groupoid_rep_phi(const Element& u, const Functional& w, const Tolerance& tol = {});

/// Direct sum of the GNS spaces of a family of states.
struct DirectSum {
  std::vector<GnsSpace> fibers;
  std::vector<int> offsets;
  int dim = 0;

  Eigen::MatrixXcd rep(const Element& x) const;
  /// Index of the fiber whose state has this density, or -1.
  int find(const Functional& w, double eps) const;
  /// Rank of x -> rep(x) on the algebra; faithful iff it equals the algebra dimension.
  int rep_rank() const;
  bool faithful() const;
  /// Join of the supports of the states (reported separately from faithfulness).
  bool supports_cover_unit(const Tolerance& tol = {}) const;
};
DirectSum direct_sum(const std::vector<Functional>& states, const Tolerance& tol = {});

/// Fiber map placed in the (target, source) block of the direct sum.
Eigen::MatrixXcd extend_fiber_map(const DirectSum& sum, int source, int target, const Element& u,
                                  const Tolerance& tol = {});
/// max over matrix units g of ||op rep(g) - rep(g) op||.
double commutant_defect(const Eigen::MatrixXcd& op, const DirectSum& sum);

/// Assignment of an arrow u(w) with u*u = support(w) to each point of a set of states.
struct LocalBisection {
  std::vector<int> points;      // fiber indices in the direct sum
  std::vector<Element> arrows;  // u(points[i])
};

struct BisectionRep {
  Eigen::MatrixXcd op;
  double isometry_defect = 0.0;   // ||op* op - sum over points of id||
  double commutant_defect = 0.0;
  nlohmann::json to_json() const;
};
/// Sum of extended fiber maps. Throws MomentMismatch, NotInjective (targets must be
/// distinct) or InvalidInput when a target state is not in the family.
BisectionRep bisection_rep(const LocalBisection& sigma, const DirectSum& sum,
                           const Tolerance& tol = {});

}  // namespace wstar
