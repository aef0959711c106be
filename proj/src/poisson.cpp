#include "wstar/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "wstar/error.hpp"

namespace wstar {

namespace {

Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

void require_invertible(const Element& g, const char* what) {
  std::vector<int> r = block_ranks(g);
  for (int b = 0; b < g.shape().blocks(); ++b)
    if (r[b] != g.shape().dims[b]) fail(ErrorKind::InvalidInput, std::string(what) + ": singular base");
}

double scaled_gap(const Element& a, const Element& b) {
  return a.distance(b) / (1.0 + std::max(a.max_abs(), b.max_abs()));
}

}  // namespace

ScalarField ScalarField::linear_field(Element a) {
  ScalarField f;
  f.kind = Kind::Linear;
  f.linear = std::move(a);
  return f;
}

ScalarField ScalarField::product_field(std::vector<Element> factors) {
  ScalarField f;
  f.kind = Kind::Product;
  f.factors = std::move(factors);
  return f;
}

ScalarField ScalarField::custom_field(std::function<cplx(const Functional&)> fn) {
  ScalarField f;
  f.kind = Kind::Custom;
  f.custom = std::move(fn);
  return f;
}

cplx ScalarField::operator()(const Functional& w) const {
  switch (kind) {
    case Kind::Linear:
      return pairing(w, linear);
    case Kind::Product: {
      cplx v = 1.0;
      for (const auto& a : factors) v *= pairing(w, a);
      return v;
    }
    case Kind::Custom:
      if (!custom) fail(ErrorKind::InvalidInput, "custom field without evaluator");
      return custom(w);
  }
  return 0.0;
}

Element fd_gradient(const ScalarField& f, const Functional& w) {
  Element rho = w.density.to_float();
  const Shape& s = rho.shape();
  const double h = 1e-5 * (1.0 + trace_norm(rho));
  Element::FloatBlocks grad;
  for (int b = 0; b < s.blocks(); ++b) {
    Eigen::MatrixXcd d(s.dims[b], s.dims[b]);
    for (int i = 0; i < s.dims[b]; ++i)
      for (int j = 0; j < s.dims[b]; ++j) {
        Element step = Element::matrix_unit(s, b, i, j).scaled(cplx(h));
        cplx plus, minus;
        try {
          plus = f(Functional{rho + step});
          minus = f(Functional{rho - step});
        } catch (const Error& e) {
          fail(ErrorKind::GradientFailure, std::string("field evaluation failed: ") + e.what());
        }
        d(j, i) = (plus - minus) / (2.0 * h);
        if (!std::isfinite(d(j, i).real()) || !std::isfinite(d(j, i).imag()))
          fail(ErrorKind::GradientFailure, "non-finite difference quotient");
      }
    grad.push_back(std::move(d));
  }
  return Element(std::move(grad));
}

Element gradient(const ScalarField& f, const Functional& w) {
  return f.kind == ScalarField::Kind::Linear ? f.linear : fd_gradient(f, w);
}

cplx lie_poisson_bracket(const ScalarField& f, const ScalarField& g, const Functional& w) {
  if (f.kind == ScalarField::Kind::Linear && g.kind == ScalarField::Kind::Linear)
    return pairing(w, commutator(f.linear, g.linear));
  Element df = gradient(f, w).to_float(), dg = gradient(g, w).to_float();
  return pairing(Functional{w.density.to_float()}, commutator(df, dg));
}

ScalarField bracket_field(const ScalarField& f, const ScalarField& g) {
  if (f.kind == ScalarField::Kind::Linear && g.kind == ScalarField::Kind::Linear)
    return ScalarField::linear_field(commutator(f.linear, g.linear));
  return ScalarField::custom_field([f, g](const Functional& w) { return lie_poisson_bracket(f, g, w); });
}

double jacobi_defect(const ScalarField& f, const ScalarField& g, const ScalarField& h,
                     const Functional& w) {
  using K = ScalarField::Kind;
  if (f.kind == K::Linear && g.kind == K::Linear && h.kind == K::Linear) {
    const Element &a = f.linear, &b = g.linear, &c = h.linear;
    Element sum = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                  commutator(c, commutator(a, b));
    if (sum.is_exact() && w.density.is_exact()) return exact_trace(w.density * sum).is_zero() ? 0.0 : std::abs(pairing(w, sum));
    return std::abs(pairing(Functional{w.density.to_float()}, sum.to_float()));
  }
  cplx total = lie_poisson_bracket(f, bracket_field(g, h), w) +
               lie_poisson_bracket(g, bracket_field(h, f), w) +
               lie_poisson_bracket(h, bracket_field(f, g), w);
  return std::abs(total);
}

Element ad_action(const Element& g, const Element& x) {
  require_invertible(g, "Ad");
  return g * x * inverse(g);
}

Functional ad_star_action(const Element& g, const Functional& w) {
  require_invertible(g, "Ad*");
  return Functional{g * w.density * inverse(g)};
}

ScalarField pull_back_ad_star(const ScalarField& f, const Element& g) {
  require_invertible(g, "Ad*");
  Element gi = inverse(g);
  if (f.kind == ScalarField::Kind::Linear) return ScalarField::linear_field(gi * f.linear * g);
  if (f.kind == ScalarField::Kind::Product) {
    std::vector<Element> moved;
    for (const auto& a : f.factors) moved.push_back(gi * a * g);
    return ScalarField::product_field(std::move(moved));
  }
  return ScalarField::custom_field([f, g](const Functional& w) { return f(ad_star_action(g, w)); });
}

Element tg_source(const TangentElement& a) { return inverse(a.base) * a.vec; }
Element tg_target(const TangentElement& a) { return a.vec * inverse(a.base); }

TangentElement tg_compose(const TangentElement& a, const TangentElement& b) {
  if (scaled_gap(tg_source(a), tg_target(b)) > kComposabilityTol)
    fail(ErrorKind::NotComposable, "tangent arrows are not composable");
  return {a.base * b.base, a.base * b.vec};
}

TangentElement tg_inverse(const TangentElement& a) {
  Element gi = inverse(a.base);
  return {gi, gi * a.vec * gi};
}

TangentElement tg_identity(const Element& x) { return {Element::identity(x.shape(), x.backend()), x}; }

Groupoid<TangentElement, Element> tangent_groupoid() {
  Groupoid<TangentElement, Element> g;
  g.source = tg_source;
  g.target = tg_target;
  g.compose = tg_compose;
  g.inverse = tg_inverse;
  g.identity = tg_identity;
  g.arrow_distance = [](const TangentElement& a, const TangentElement& b) {
    return std::max(a.base.distance(b.base), a.vec.distance(b.vec));
  };
  g.base_distance = [](const Element& a, const Element& b) { return a.distance(b); };
  return g;
}

Element ctg_source(const CotangentElement& a) { return a.codensity * a.base; }
Element ctg_target(const CotangentElement& a) { return a.base * a.codensity; }

CotangentElement ctg_compose(const CotangentElement& xi, const CotangentElement& eta) {
  if (scaled_gap(ctg_source(xi), ctg_target(eta)) > kComposabilityTol)
    fail(ErrorKind::NotComposable, "cotangent arrows are not composable");
  return {xi.base * eta.base, eta.codensity * inverse(xi.base)};
}

CotangentElement ctg_inverse(const CotangentElement& xi) {
  return {inverse(xi.base), xi.base * xi.codensity * xi.base};
}

CotangentElement ctg_identity(const Element& f) {
  return {Element::identity(f.shape(), f.backend()), f};
}

Groupoid<CotangentElement, Element> cotangent_groupoid() {
  Groupoid<CotangentElement, Element> g;
  g.source = ctg_source;
  g.target = ctg_target;
  g.compose = ctg_compose;
  g.inverse = ctg_inverse;
  g.identity = ctg_identity;
  g.arrow_distance = [](const CotangentElement& a, const CotangentElement& b) {
    return std::max(a.base.distance(b.base), a.codensity.distance(b.codensity));
  };
  g.base_distance = [](const Element& a, const Element& b) { return a.distance(b); };
  return g;
}

Groupoid<PointedArrow, Element> conjugation_groupoid(const Tolerance& tol) {
  Groupoid<PointedArrow, Element> g;
  g.source = [](const PointedArrow& a) { return a.r; };
  g.target = [tol](const PointedArrow& a) { return a.g * a.r * pseudo_inverse(a.g, tol); };
  g.compose = [tol](const PointedArrow& a, const PointedArrow& b) {
    Element t = b.g * b.r * pseudo_inverse(b.g, tol);
    if (scaled_gap(t, a.r) > kComposabilityTol)
      fail(ErrorKind::NotComposable, "pointed arrows are not composable");
    return PointedArrow{a.g * b.g, b.r};
  };
  g.inverse = [tol](const PointedArrow& a) {
    Element gi = pseudo_inverse(a.g, tol);
    return PointedArrow{gi, a.g * a.r * gi};
  };
  g.identity = [tol](const Element& x) { return PointedArrow{left_support(x, tol), x}; };
  g.arrow_distance = [](const PointedArrow& a, const PointedArrow& b) {
    return std::max(a.g.distance(b.g), a.r.distance(b.r));
  };
  g.base_distance = [](const Element& a, const Element& b) { return a.distance(b); };
  return g;
}

PointedArrow lambda_immersion(const TangentElement& a, const Tolerance& tol) {
  require_invertible(a.base, "lambda");
  Element x = tg_source(a);
  return {a.base * left_support(x, tol), x};
}

PointedArrow lambda_star_immersion(const CotangentElement& xi, const Tolerance& tol) {
  require_invertible(xi.base, "lambda*");
  Element x = ctg_source(xi);
  return {xi.base * left_support(x, tol), x};
}

const char* to_string(SignMode m) { return m == SignMode::Literal ? "literal" : "antisymmetrized"; }

SignMode parse_sign_mode(const std::string& s) {
  if (s == "literal") return SignMode::Literal;
  if (s == "antisymmetrized") return SignMode::Antisymmetrized;
  fail(ErrorKind::InvalidInput, "sign mode must be 'literal' or 'antisymmetrized'");
}

cplx symplectic_form(const Element& g, const Functional& rho, const PhaseVector& v,
                     const PhaseVector& w, SignMode mode) {
  require_invertible(g, "symplectic form");
  Element gi = inverse(g);
  Element xa = gi * v.tangent, xb = gi * w.tangent;
  cplx first = trace(w.codensity * xa);
  cplx second = trace(v.codensity * xb);
  cplx third = pairing(rho, commutator(xa, xb));
  return mode == SignMode::Literal ? first + second - third : first - second - third;
}

}  // namespace wstar
