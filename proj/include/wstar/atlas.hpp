#pragma once

#include "wstar/element.hpp"

namespace wstar {

/// q lies in the chart domain of p when q meet (1-p) = 0 and q join (1-p) = 1.
bool in_chart_domain(const Element& q, const Element& p, const Tolerance& tol = {});

/// Splitting data of q in the chart at p: x = E p with E the idempotent onto range(q)
/// along range(1-p), and y = x - p in (1-p)Mp.
struct ChartPoint {
  Element x;  // section, S(x) = p and T(x) = q
  Element y;  // chart coordinate
};
/// Throws ChartDomain when q is outside the domain of p.
ChartPoint chart_point(const Element& p, const Element& q, const Tolerance& tol = {});
Element chart_phi(const Element& p, const Element& q, const Tolerance& tol = {});
Element section_sigma(const Element& p, const Element& q, const Tolerance& tol = {});
/// l(p + y); y must lie in (1-p)Mp.
Element chart_phi_inv(const Element& p, const Element& y, const Tolerance& tol = {});

/// Closed-form change of coordinates (b + d y) inverse(a + c y) with a = p2 p, b = (1-p2) p,
/// c = p2 (1-p), d = (1-p2)(1-p). Throws OverlapViolation when l(p + y) is outside the
/// domain of p2.
Element lattice_transition(const Element& p, const Element& p2, const Element& y,
                           const Tolerance& tol = {});

/// Coordinates of x in the groupoid chart around (target base, source base).
struct GroupoidCoords {
  Element target;  // chart coordinate of T(x), in (1-pt)M pt
  Element core;    // in pt M p
  Element source;  // chart coordinate of S(x), in (1-p)Mp
};
GroupoidCoords groupoid_chart_psi(const Element& pt, const Element& p, const Element& x,
                                  const Tolerance& tol = {});
/// (pt + target) core inverse(p + source).
Element groupoid_chart_psi_inv(const Element& pt, const Element& p, const GroupoidCoords& c,
                               const Tolerance& tol = {});
/// Closed-form change from the chart (pt, p) to (pt2, p2): lattice transitions on both
/// ends and core' = inverse(pt2 + target') (pt + target) core inverse(p + source) (p2 + source').
GroupoidCoords groupoid_transition(const Element& pt, const Element& p, const Element& pt2,
                                   const Element& p2, const GroupoidCoords& c,
                                   const Tolerance& tol = {});
double coords_distance(const GroupoidCoords& a, const GroupoidCoords& b);

/// (p + y* y)^{1/2} restricted to pMp.
Element chart_metric_root(const Element& p, const Element& y, const Tolerance& tol = {});
/// Core coordinate rescaled by the metric roots: root(target) core root(source)^{-1}.
Element rescaled_core(const Element& pt, const Element& p, const GroupoidCoords& c,
                      const Tolerance& tol = {});
/// |w - inverse(w*)| for the rescaled core w of x; zero when x is a partial isometry.
double rescaled_core_defect(const Element& pt, const Element& p, const Element& x,
                            const Tolerance& tol = {});

struct InvolutionCheck {
  double square_defect = 0.0;  // max |(DJ)^2 - 1| over the real tangent basis
  double fixed_defect = 0.0;   // |J(u) - u|
  int tangent_dim = 0;         // real dimension
};
/// Central differences of x -> inverse(x)* in the groupoid chart centered at (l(u), r(u)).
/// Throws InvalidInput on a step below 1e-12.
InvolutionCheck involution_derivative_check(const Element& u, double h = 1e-5,
                                            const Tolerance& tol = {});

}  // namespace wstar
