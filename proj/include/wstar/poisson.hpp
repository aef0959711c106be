#pragma once

#include <functional>
#include <vector>

#include "wstar/groupoid.hpp"

namespace wstar {

/// Function on the predual. Linear fields carry their gradient; the other kinds are
/// differentiated numerically.
struct ScalarField {
  enum class Kind { Linear, Product, Custom };
  Kind kind = Kind::Custom;
  Element linear;               // w -> <w, linear>
  std::vector<Element> factors; // w -> prod <w, factor>
  std::function<cplx(const Functional&)> custom;

  static ScalarField linear_field(Element a);
  static ScalarField product_field(std::vector<Element> factors);
  static ScalarField custom_field(std::function<cplx(const Functional&)> f);
  cplx operator()(const Functional& w) const;
};

/// Central differences D_ji = (f(w + h e_ij) - f(w - h e_ij)) / 2h, h = 1e-5 (1 + |w|).
Element fd_gradient(const ScalarField& f, const Functional& w);
/// The linear element itself for linear fields, fd_gradient otherwise.
Element gradient(const ScalarField& f, const Functional& w);

/// <w, [Df(w), Dg(w)]>.
cplx lie_poisson_bracket(const ScalarField& f, const ScalarField& g, const Functional& w);
/// {f, g} as a field; linear for two linear fields.
ScalarField bracket_field(const ScalarField& f, const ScalarField& g);
/// |{f,{g,h}} + {g,{h,f}} + {h,{f,g}}|. For three linear fields the double commutators are
/// summed first, so the exact backend gives exactly zero.
double jacobi_defect(const ScalarField& f, const ScalarField& g, const ScalarField& h,
                     const Functional& w);

/// g x g^{-1}.
Element ad_action(const Element& g, const Element& x);
/// Density g rho g^{-1}, so <Ad*_g w, x> = <w, Ad_{g^{-1}} x>.
Functional ad_star_action(const Element& g, const Functional& w);
/// f composed with Ad*_g (linear fields stay linear).
ScalarField pull_back_ad_star(const ScalarField& f, const Element& g);

/// Tangent vector vec at an invertible base.
struct TangentElement {
  Element base;
  Element vec;
};
Element tg_source(const TangentElement& a);  // base^{-1} vec
Element tg_target(const TangentElement& a);  // vec base^{-1}
/// (gh, gB); throws NotComposable unless tg_source(a) = tg_target(b).
TangentElement tg_compose(const TangentElement& a, const TangentElement& b);
TangentElement tg_inverse(const TangentElement& a);  // (g^{-1}, g^{-1} A g^{-1})
TangentElement tg_identity(const Element& x);        // (1, x)
Groupoid<TangentElement, Element> tangent_groupoid();

/// Covector at an invertible base, paired with tangent vectors by tr(codensity A).
struct CotangentElement {
  Element base;
  Element codensity;
};
Element ctg_source(const CotangentElement& a);  // F g
Element ctg_target(const CotangentElement& a);  // g F
/// (gh, F_eta g^{-1}); throws NotComposable unless ctg_source(xi) = ctg_target(eta).
CotangentElement ctg_compose(const CotangentElement& xi, const CotangentElement& eta);
CotangentElement ctg_inverse(const CotangentElement& xi);  // (g^{-1}, g F g)
CotangentElement ctg_identity(const Element& f);          // (1, f)
Groupoid<CotangentElement, Element> cotangent_groupoid();

/// Arrows (x, X) with source X, target x X inverse(x), product (x y, Y) and unit (l(X), X).
using PointedArrow = ActionArrow<Element, Element>;
Groupoid<PointedArrow, Element> conjugation_groupoid(const Tolerance& tol = {});
/// (g l(g^{-1}A), g^{-1}A).
PointedArrow lambda_immersion(const TangentElement& a, const Tolerance& tol = {});
/// (g l(F g), F g).
PointedArrow lambda_star_immersion(const CotangentElement& xi, const Tolerance& tol = {});

enum class SignMode { Literal, Antisymmetrized };
const char* to_string(SignMode m);
SignMode parse_sign_mode(const std::string& s);

/// Pair (tangent vector at the base, covector density at the unit).
struct PhaseVector {
  Element tangent;
  Element codensity;
};
/// With Xa = g^{-1} a and Xb = g^{-1} b:
///   literal:         <eta, Xa> + <xi, Xb> - <rho, [Xa, Xb]>
///   antisymmetrized: <eta, Xa> - <xi, Xb> - <rho, [Xa, Xb]>
cplx symplectic_form(const Element& g, const Functional& rho, const PhaseVector& v,
                     const PhaseVector& w, SignMode mode);

}  // namespace wstar
