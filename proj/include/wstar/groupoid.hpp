#pragma once

#include "wstar/element.hpp"
#include "wstar/groupoid_framework.hpp"
#include "wstar/lattice.hpp"

namespace wstar {

/// Source S(x) = r(x).
Element groupoid_source(const Element& x, const Tolerance& tol = {});
/// Target T(x) = l(x).
Element groupoid_target(const Element& x, const Tolerance& tol = {});
/// Unit at p is p itself.
Element identity_section(const Projection& p);
/// Product xy; throws NotComposable unless S(x) = T(y).
Element groupoid_compose(const Element& x, const Element& y, const Tolerance& tol = {});
/// Inverse |x|^{-1} u* on the support (the Moore-Penrose inverse).
Element groupoid_inverse(const Element& x, const Tolerance& tol = {});
/// J(x) = inverse(x)*; fixes exactly the partial isometries.
Element involution_J(const Element& x, const Tolerance& tol = {});
/// x y inverse(x) for y in pMp, p = S(x). Throws NotInFiber otherwise.
Element inner_action(const Element& x, const Element& y, const Tolerance& tol = {});

/// Operator-norm distance of two supports, used to decide composability.
double support_gap(const Element& p, const Element& q);

/// The groupoid of partially invertible elements over the projection lattice.
Groupoid<Element, Element> partial_invertibles(const Tolerance& tol = {});

/// Normal functional x -> sum_b tr(rho_b x_b) given by its density rho.
struct Functional {
  Element density;
};

cplx pairing(const Functional& w, const Element& x);
/// Trace norm of the density.
double functional_norm(const Functional& w);
bool is_positive_functional(const Functional& w, const Tolerance& tol = {});

struct FunctionalSupports {
  Element right;  // least p with w(p x) = w(x), i.e. r(rho)
  Element left;   // least p with w(x p) = w(x), i.e. l(rho)
};
FunctionalSupports functional_supports(const Functional& w, const Tolerance& tol = {});
/// Support of a positive functional.
Element state_support(const Functional& w, const Tolerance& tol = {});

/// Transposed left multiplication: <L_a w, x> = <w, x a>, density a rho.
Functional L_star(const Element& a, const Functional& w);
/// Transposed right multiplication: <R_a w, x> = <w, a x>, density rho a.
Functional R_star(const Element& a, const Functional& w);
/// L_star for a partial isometry u with S(u) equal to the left support of w.
Functional L_star_action(const Element& u, const Functional& w, const Tolerance& tol = {});
/// R_star for a partial isometry u with T(u) equal to the right support of w.
Functional R_star_action(const Element& u, const Functional& w, const Tolerance& tol = {});
/// Density u rho u*; requires rho in pMp with p = S(u).
Functional I_star(const Element& u, const Functional& w, const Tolerance& tol = {});

/// Unitary groupoid acting on positive functionals through I_star, moment = support.
GroupoidAction<Element, Element, Functional> predual_inner_action(const Tolerance& tol = {});
/// Left multiplication action on M with moment l.
GroupoidAction<Element, Element, Element> left_multiplication_action(const Tolerance& tol = {});

}  // namespace wstar
