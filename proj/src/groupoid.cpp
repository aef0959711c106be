#include "wstar/groupoid.hpp"

namespace wstar {

Element groupoid_source(const Element& x, const Tolerance& tol) { return right_support(x, tol); }

Element groupoid_target(const Element& x, const Tolerance& tol) { return left_support(x, tol); }

Element identity_section(const Projection& p) { return p.element(); }

double support_gap(const Element& p, const Element& q) {
  if (p.is_exact() && q.is_exact() && p.equals(q)) return 0.0;
  return operator_norm((p - q).to_float());
}

namespace {

bool same_support(const Element& p, const Element& q) {
  if (p.is_exact() && q.is_exact()) return p.equals(q);
  return support_gap(p, q) <= kComposabilityTol;
}

}  // namespace

Element groupoid_compose(const Element& x, const Element& y, const Tolerance& tol) {
  require_same_shape(x, y, "compose");
  if (!same_support(groupoid_source(x, tol), groupoid_target(y, tol)))
    fail(ErrorKind::NotComposable, "S(x) != T(y)");
  return x * y;
}

Element groupoid_inverse(const Element& x, const Tolerance& tol) { return pseudo_inverse(x, tol); }

Element involution_J(const Element& x, const Tolerance& tol) {
  return groupoid_inverse(x, tol).adjoint();
}

Element inner_action(const Element& x, const Element& y, const Tolerance& tol) {
  require_same_shape(x, y, "inner_action");
  Element p = groupoid_source(x, tol);
  if (!(p * y * p).equals(y, tol.eps_eq))
    fail(ErrorKind::NotInFiber, "y is not in pMp for p = S(x)");
  return x * y * groupoid_inverse(x, tol);
}

Groupoid<Element, Element> partial_invertibles(const Tolerance& tol) {
  Groupoid<Element, Element> g;
  g.source = [tol](const Element& x) { return groupoid_source(x, tol); };
  g.target = [tol](const Element& x) { return groupoid_target(x, tol); };
  g.compose = [tol](const Element& x, const Element& y) { return groupoid_compose(x, y, tol); };
  g.inverse = [tol](const Element& x) { return groupoid_inverse(x, tol); };
  g.identity = [](const Element& p) { return p; };
  g.arrow_distance = [](const Element& a, const Element& b) { return a.distance(b); };
  g.base_distance = [](const Element& a, const Element& b) { return a.distance(b); };
  return g;
}

cplx pairing(const Functional& w, const Element& x) { return trace(w.density * x); }

double functional_norm(const Functional& w) { return trace_norm(w.density.to_float()); }

bool is_positive_functional(const Functional& w, const Tolerance& tol) {
  return is_positive(w.density, tol);
}

FunctionalSupports functional_supports(const Functional& w, const Tolerance& tol) {
  return {right_support(w.density, tol), left_support(w.density, tol)};
}

Element state_support(const Functional& w, const Tolerance& tol) {
  if (!is_positive_functional(w, tol)) fail(ErrorKind::NotPositive, "functional is not positive");
  return right_support(w.density, tol);
}

Functional L_star(const Element& a, const Functional& w) { return {a * w.density}; }

Functional R_star(const Element& a, const Functional& w) { return {w.density * a}; }

Functional L_star_action(const Element& u, const Functional& w, const Tolerance& tol) {
  if (!same_support(groupoid_source(u, tol), left_support(w.density, tol)))
    fail(ErrorKind::MomentMismatch, "S(u) differs from the left support of w");
  return L_star(u, w);
}

Functional R_star_action(const Element& u, const Functional& w, const Tolerance& tol) {
  if (!same_support(groupoid_target(u, tol), right_support(w.density, tol)))
    fail(ErrorKind::MomentMismatch, "T(u) differs from the right support of w");
  return R_star(u, w);
}

Functional I_star(const Element& u, const Functional& w, const Tolerance& tol) {
  require_same_shape(u, w.density, "I_star");
  Element p = groupoid_source(u, tol);
  if (!(p * w.density * p).equals(w.density, tol.eps_eq))
    fail(ErrorKind::MomentMismatch, "w is not supported under S(u)");
  return {u * w.density * u.adjoint()};
}

GroupoidAction<Element, Element, Functional> predual_inner_action(const Tolerance& tol) {
  GroupoidAction<Element, Element, Functional> a;
  a.act = [tol](const Element& u, const Functional& w) {
    if (!same_support(groupoid_source(u, tol), state_support(w, tol)))
      fail(ErrorKind::MomentMismatch, "S(u) differs from the support of w");
    return I_star(u, w, tol);
  };
  a.moment = [tol](const Functional& w) { return state_support(w, tol); };
  a.point_distance = [](const Functional& a1, const Functional& a2) {
    return a1.density.distance(a2.density);
  };
  return a;
}

GroupoidAction<Element, Element, Element> left_multiplication_action(const Tolerance& tol) {
  GroupoidAction<Element, Element, Element> a;
  a.act = [tol](const Element& x, const Element& y) {
    if (!same_support(groupoid_source(x, tol), left_support(y, tol)))
      fail(ErrorKind::MomentMismatch, "S(x) differs from l(y)");
    return x * y;
  };
  a.moment = [tol](const Element& y) { return left_support(y, tol); };
  a.point_distance = [](const Element& a1, const Element& a2) { return a1.distance(a2); };
  return a;
}

}  // namespace wstar
