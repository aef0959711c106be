#include "wstar/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "wstar/atlas.hpp"
#include "wstar/car.hpp"
#include "wstar/cuntz.hpp"
#include "wstar/error.hpp"
#include "wstar/free_action.hpp"
#include "wstar/gns.hpp"
#include "wstar/groupoid.hpp"
#include "wstar/json_io.hpp"
#include "wstar/monogenic.hpp"
#include "wstar/poisson.hpp"
#include "wstar/sampler.hpp"
#include "wstar/semigroup.hpp"

namespace wstar {

namespace {

using nlohmann::json;

Element one_minus(const Element& p) { return Element::identity(p.shape(), p.backend()) - p; }

Element corner(Sampler& smp, const Element& left, const Element& right) {
  return left * smp.gaussian(left.shape()) * right;
}

/// Ranks strictly between 0 and n where the block allows it.
std::vector<int> proper_ranks(Sampler& smp, const Shape& s) {
  std::vector<int> r;
  for (int n : s.dims) r.push_back(n == 1 ? smp.integer(0, 1) : smp.integer(1, n - 1));
  return r;
}

double flag(bool ok) { return ok ? 0.0 : 1.0; }

/// Collects sub-reports with their own thresholds; failures and the worst defect bubble up.
struct Aggregate {
  Report total;
  json parts = json::array();

  explicit Aggregate(std::string name) : total(std::move(name), 0.0) {}
  void add(const Report& r) {
    total.merge(r);
    parts.push_back(r.to_json());
  }
  Report finish() {
    total.threshold = 0.0;
    total.extra["parts"] = parts;
    return total;
  }
};

Element abs_of(const Element& x, const Tolerance& tol) { return polar_decompose(x, tol).abs; }

}  // namespace

Report groupoid_axioms_suite(const Shape& s, std::size_t arrows, std::uint64_t seed) {
  const Tolerance tol;
  Sampler smp(seed);
  GroupoidSamples<Element> samples;
  for (std::size_t i = 0; i < arrows; ++i) {
    Element x = (i % 50 == 49) ? Element::zero(s) : smp.random_rank(s);
    Element y = groupoid_source(x, tol) * smp.invertible(s);
    Element z = groupoid_source(y, tol) * smp.invertible(s);
    samples.arrows.push_back(x);
    samples.pairs.emplace_back(x, y);
    samples.triples.emplace_back(x, y, z);
  }
  Report r = verify_groupoid_axioms(partial_invertibles(tol), samples, 1e-8);
  r.params = {{"shape", shape_to_json(s)}, {"arrows", arrows}, {"seed", seed}};
  return r;
}

Report polar_suite(const Shape& s, std::size_t samples, std::uint64_t seed) {
  const Tolerance tol;
  Sampler smp(seed);
  Report r("polar", 1e-8);
  r.params = {{"shape", shape_to_json(s)}, {"samples", samples}, {"seed", seed}};
  for (std::size_t i = 0; i < samples; ++i) {
    Element x = smp.random_rank(s);
    Polar p = polar_decompose(x, tol);
    r.record("x = u|x|", i, (p.u * p.abs).distance(x));
    r.record("u*u = s(|x|)", i, (p.u.adjoint() * p.u).distance(left_support(p.abs, tol)));
    r.record("|x*| = u|x|u*", i, sqrt_positive(x * x.adjoint(), tol).distance(p.u * p.abs * p.u.adjoint()));
    r.record("|x| = sqrt(x*x)", i, sqrt_positive(x.adjoint() * x, tol).distance(p.abs));
    Element l = left_support(x, tol), rs = right_support(x, tol);
    r.record("l(x) x = x", i, (l * x).distance(x));
    r.record("x r(x) = x", i, (x * rs).distance(x));
    r.record("rank l(x) = rank x", i, flag(block_ranks(l, tol) == block_ranks(x, tol)));
    r.record("rank r(x) = rank x", i, flag(block_ranks(rs, tol) == block_ranks(x, tol)));
  }
  return r;
}

Report inner_action_suite(const Shape& s, std::size_t samples, std::uint64_t seed) {
  const Tolerance tol;
  Sampler smp(seed);
  Report r("inner-action", 1e-7);
  r.params = {{"shape", shape_to_json(s)}, {"samples", samples}, {"seed", seed}};
  for (std::size_t i = 0; i < samples; ++i) {
    Element u = smp.partial_isometry(s);
    Element p = u.adjoint() * u;
    Element x = corner(smp, p, p);
    Element ix = inner_action(u, x, tol);
    r.record("|I_u x| = I_u |x|", i, abs_of(ix, tol).distance(inner_action(u, abs_of(x, tol), tol)));
    r.record("||I_u x|| = ||x||", i, std::abs(operator_norm(ix) - operator_norm(x)));
    Functional w{corner(smp, p, p)};
    Functional iw = I_star(u, w, tol);
    r.record("||I_*u w|| = ||w||", i, std::abs(functional_norm(iw) - functional_norm(w)));
    r.record("|I_*u w| = I_*u |w|", i,
             abs_of(iw.density, tol).distance(I_star(u, Functional{abs_of(w.density, tol)}, tol).density));
  }
  return r;
}

Report free_action_suite(const Shape& s, std::size_t attempts, std::uint64_t seed) {
  Sampler smp(seed);
  Report r = free_action_check(s, attempts, smp);
  r.params = {{"shape", shape_to_json(s)}, {"attempts", attempts}, {"seed", seed}};
  return r;
}

Report gns_suite(const Shape& s, std::size_t states, std::uint64_t seed) {
  const Tolerance tol;
  Sampler smp(seed);
  Report r("gns", 1e-9);
  r.params = {{"shape", shape_to_json(s)}, {"states", states}, {"seed", seed}};

  struct Chain {
    Functional w0, w1, w2;
    Element u1, u2;  // (u1, w0) then (u2, w1)
  };
  std::vector<Chain> chains;
  std::vector<Functional> family;
  for (std::size_t i = 0; i < states; ++i) {
    Functional w0{smp.density(s, smp.random_ranks(s, false))};
    Element u1 = smp.unitary(s) * state_support(w0, tol);
    Functional w1 = I_star(u1, w0, tol);
    Element u2 = smp.unitary(s) * state_support(w1, tol);
    Functional w2 = I_star(u2, w1, tol);
    chains.push_back({w0, w1, w2, u1, u2});
    family.insert(family.end(), {w0, w1, w2});
  }
  family.push_back(Functional{Element::identity(s).scaled(cplx(1.0 / s.hilbert_dim()))});
  DirectSum sum = direct_sum(family, tol);

  for (std::size_t i = 0; i < chains.size(); ++i) {
    const Chain& c = chains[i];
    const GnsSpace &h0 = sum.fibers[3 * i], &h1 = sum.fibers[3 * i + 1], &h2 = sum.fibers[3 * i + 2];
    FiberMap f1 = fiber_map_between(c.u1, h0, h1, tol);
    FiberMap f2 = fiber_map_between(c.u2, h1, h2, tol);
    FiberMap f12 = fiber_map_between(c.u2 * c.u1, h0, h2, tol);
    auto id = [](int d) { return Eigen::MatrixXcd::Identity(d, d); };
    auto gap = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
      return a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
    };
    r.record("isometry", i, std::max(gap(f1.matrix.adjoint() * f1.matrix, id(h0.dim())),
                                     gap(f2.matrix.adjoint() * f2.matrix, id(h1.dim()))));
    r.record("functoriality", i, gap(f12.matrix, f2.matrix * f1.matrix));
    FiberMap back = fiber_map_between(c.u1.adjoint(), h1, h0, tol);
    r.record("inverse", i, std::max(gap(back.matrix * f1.matrix, id(h0.dim())),
                                    gap(f1.matrix * back.matrix, id(h1.dim()))));
    r.record("unit-arrow", i, gap(fiber_map_between(h0.support, h0, h0, tol).matrix, id(h0.dim())));
    // The arrow is recovered from its fiber map: the class of 1 goes to u*.
    r.record("faithful", i, std::max(f1.apply(h0.support).distance(c.u1.adjoint()),
                                     f12.apply(h0.support).distance((c.u2 * c.u1).adjoint())));
    Eigen::MatrixXcd ext = extend_fiber_map(sum, int(3 * i), int(3 * i + 1), c.u1, tol);
    r.record("commutant", i, commutant_defect(ext, sum));
    r.record("rep-multiplicative", i, [&] {
      Element a = smp.gaussian(s), b = smp.gaussian(s);
      return std::max(gap(gns_rep(a * b, h0), gns_rep(a, h0) * gns_rep(b, h0)),
                      gap(gns_rep(a.adjoint(), h0), gns_rep(a, h0).adjoint()));
    }());
  }
  r.record("family-faithful", 0, flag(sum.faithful()));
  r.record("supports-cover-unit", 0, flag(sum.supports_cover_unit(tol)));
  // A non-central element is not in the commutant.
  if (s.dims[0] > 1) {
    double d = commutant_defect(sum.rep(Element::matrix_unit(s, 0, 0, 0)), sum);
    r.record("non-central-excluded", 0, flag(d > 1e-3));
  }
  r.extra["family_size"] = family.size();
  r.extra["direct_sum_dim"] = sum.dim;
  return r;
}

Report semigroup_suite(const Shape& s, std::uint64_t seed) {
  Report r("semigroup", 0.0);
  r.params = {{"shape", shape_to_json(s)}, {"seed", seed}};
  json sizes = json::array();
  for (int b = 0; b < s.blocks(); ++b) {
    MatrixUnitSystem sys = standard_matrix_units(s, b);
    Closure c = generate_closure(sys.generators());
    sizes.push_back(c.size());
    r.record("closure-complete", b, flag(c.closed));
    SemigroupCheck isg = check_inverse_semigroup(c);
    r.record("inverse-semigroup", b, flag(isg.holds));
    // Every element is the lift of the partial bijection it induces.
    bool lifts = true;
    for (const auto& e : c.elements)
      lifts = lifts && partial_bijection_lift(partial_bijection_of(e, sys), sys).equals(e);
    r.record("partial-bijection-lift", b, flag(lifts));
  }
  r.extra["closure_sizes"] = sizes;
  json dich = json::array();
  std::vector<Shape> shapes = {Shape{1, 1}, Shape{1, 1, 1}, s};
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    DichotomyReport d = abelian_dichotomy_check(shapes[i], 50, seed + i);
    dich.push_back(d.to_json());
    bool expected = d.holds && (d.abelian || d.counterexample.has_value());
    r.record("abelian-dichotomy", i, flag(expected));
  }
  r.extra["dichotomy"] = dich;
  return r;
}

namespace {

Element truncated_shift(int n) {
  QMatrix m(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i + 1, i) = GaussRat(1);
  return Element(Element::ExactBlocks{m});
}

}  // namespace

Report monogenic_suite(const std::vector<int>& sizes) {
  Report r("monogenic", 0.0);
  r.params = {{"sizes", sizes}};
  json out = json::array();
  std::size_t idx = 0;
  for (int n : sizes) {
    Element u = truncated_shift(n);
    Closure c = generate_closure({u});
    r.record("closure-complete", idx, flag(c.closed));
    std::map<std::string, MonogenicNF> forms;
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l)
        for (int m = 0; m <= n; ++m)
          for (auto kind : {MonogenicNF::Kind::Positive, MonogenicNF::Kind::Negative}) {
            MonogenicNF nf{k, l, m, kind};
            if (k == 0 && l == 0 && m == 0) continue;
            forms.emplace(nf.evaluate(u).key(), nf);
          }
    std::vector<MonogenicNF> matched(c.size());
    for (std::size_t i = 0; i < c.size(); ++i, ++idx) {
      auto it = forms.find(c.elements[i].key());
      r.record("normal-form-match", idx, flag(it != forms.end()));
      if (it == forms.end()) continue;
      MonogenicNF nf = monogenic_normal_form(it->second.to_word());
      matched[i] = nf;
      r.record("reduced-form-evaluates", idx, flag(nf.evaluate(u).equals(c.elements[i])));
      GluskinForm g = gluskin_form(nf);
      r.record("gluskin-bounds", idx, flag(g.in_bounds()));
      r.record("gluskin-evaluates", idx, flag(g.evaluate(u).equals(c.elements[i])));
    }
    if (c.closed)
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) {
          MonogenicNF prod = monogenic_multiply(matched[i], matched[j]);
          r.record("multiply", idx++, flag(prod.evaluate(u).equals(c.elements[c.table[i][j]])));
        }
    out.push_back({{"n", n}, {"closure_size", c.size()}});
  }
  r.extra["closures"] = out;
  return r;
}

Report cuntz_suite(int max_n, int depth) {
  Aggregate a("cuntz");
  for (int n = 1; n <= max_n; ++n) a.add(cuntz_axiom_check(n, depth));
  a.add(toeplitz_agrees_with_monogenic(depth));
  Report r = a.finish();
  r.params = {{"max_n", max_n}, {"depth", depth}};
  return r;
}

Report car_suite(int max_n, int max_weight) {
  Aggregate a("car");
  json div = json::object();
  for (int n = 1; n <= max_n; ++n) {
    Report c = car_verify(n, max_weight);
    for (auto it = c.extra.begin(); it != c.extra.end(); ++it)
      if (it.value().is_number()) div[it.key()] = div.value(it.key(), 0) + it.value().get<long long>();
    a.add(c);
  }
  Report r = a.finish();
  r.params = {{"max_n", max_n}, {"max_weight", max_weight}};
  r.extra["totals"] = div;
  return r;
}

Report atlas_suite(const Shape& s, std::size_t points, std::size_t isometries, std::uint64_t seed) {
  const Tolerance tol;
  Sampler smp(seed);
  Report chart("chart-round-trip", 1e-9), trans("lattice-transition", 1e-8),
      psi("groupoid-chart-round-trip", 1e-8), tr3("groupoid-transition", 1e-7),
      dj("involution-derivative", 1e-3), gug("rescaled-core", 1e-8);
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<int> ranks = proper_ranks(smp, s);
    Element p = smp.projection(s, ranks);
    Element q = smp.projection(s, ranks);
    Element p2 = smp.projection(s, ranks);
    if (!in_chart_domain(q, p, tol) || !in_chart_domain(q, p2, tol)) {
      ++skipped;
      continue;
    }
    ChartPoint cp = chart_point(p, q, tol);
    chart.record("phi_inv(phi(q)) = q", i, chart_phi_inv(p, cp.y, tol).distance(q));
    Element y = corner(smp, one_minus(p), p);
    chart.record("phi(phi_inv(y)) = y", i, chart_phi(p, chart_phi_inv(p, y, tol), tol).distance(y));
    chart.record("S(sigma) = p", i, groupoid_source(cp.x, tol).distance(p));
    chart.record("T(sigma) = q", i, groupoid_target(cp.x, tol).distance(q));
    chart.record("p x = p", i, (p * cp.x).distance(p));
    chart.record("x p = x", i, (cp.x * p).distance(cp.x));
    chart.record("x x = x", i, (cp.x * cp.x).distance(cp.x));

    Element yq = chart_phi(p, q, tol);
    trans.record("closed form = composed charts", i,
                 lattice_transition(p, p2, yq, tol).distance(chart_phi(p2, q, tol)));

    Element pt = smp.projection(s, ranks);
    Element pt2 = smp.projection(s, ranks);
    Element x = smp.of_rank(s, ranks);
    try {
      GroupoidCoords c = groupoid_chart_psi(pt, p, x, tol);
      psi.record("psi_inv(psi(x)) = x", i, groupoid_chart_psi_inv(pt, p, c, tol).distance(x));
      GroupoidCoords c2{corner(smp, one_minus(pt), pt), corner(smp, pt, p), corner(smp, one_minus(p), p)};
      psi.record("psi(psi_inv(c)) = c", i,
                 coords_distance(groupoid_chart_psi(pt, p, groupoid_chart_psi_inv(pt, p, c2, tol), tol), c2));
      GroupoidCoords moved = groupoid_transition(pt, p, pt2, p2, c, tol);
      tr3.record("closed form = composed charts", i,
                 coords_distance(moved, groupoid_chart_psi(pt2, p2, x, tol)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ChartDomain && e.kind() != ErrorKind::OverlapViolation) throw;
      ++skipped;
    }
  }
  for (std::size_t i = 0; i < isometries; ++i) {
    Element u = smp.partial_isometry(s, proper_ranks(smp, s));
    InvolutionCheck c = involution_derivative_check(u, 1e-5, tol);
    dj.record("(DJ)^2 = 1", i, c.square_defect);
    dj.record("J(u) = u", i, c.fixed_defect);
    std::vector<int> ranks = block_ranks(u, tol);
    Element pt = smp.projection(s, ranks), p = smp.projection(s, ranks);
    try {
      gug.record("rescaled core is a partial isometry", i, rescaled_core_defect(pt, p, u, tol));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ChartDomain) throw;
      ++skipped;
    }
  }
  Aggregate a("atlas");
  for (const Report* part : {&chart, &trans, &psi, &tr3, &dj, &gug}) a.add(*part);
  Report r = a.finish();
  r.params = {{"shape", shape_to_json(s)}, {"points", points}, {"isometries", isometries}, {"seed", seed}};
  r.extra["skipped_outside_domain"] = skipped;
  return r;
}

Report poisson_suite(const Shape& s, std::size_t samples, std::uint64_t seed) {
  const Tolerance tol;
  Sampler smp(seed);
  using SF = ScalarField;
  Report lin("linear-bracket", 0.0), lin_fd("linear-bracket-fd", 1e-8), jac("jacobi-linear", 0.0),
      jac_fd("jacobi-products", 1e-5), ad("ad-star-invariance", 1e-8), tg_ax, ctg_ax,
      lam("lambda-diagrams", 1e-8), omega("symplectic-antisymmetry", 1e-12);
  auto rel = [](cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)); };
  auto normalized = [&](const Shape& sh) {
    Element a = smp.gaussian(sh);
    return a.scaled(cplx(1.0 / (1.0 + operator_norm(a))));
  };

  for (std::size_t i = 0; i < samples; ++i) {
    Element a = smp.exact_integer(s, 3), b = smp.exact_integer(s, 3), c = smp.exact_integer(s, 3);
    Element rho_x = smp.exact_integer(s, 3);
    Functional wx{rho_x * rho_x.adjoint()};
    SF fa = SF::linear_field(a), fb = SF::linear_field(b), fc = SF::linear_field(c);
    cplx br = lie_poisson_bracket(fa, fb, wx);
    cplx lin_ab = SF::linear_field(a * b - b * a)(wx);
    lin.record("{f_a, f_b} = f_[a,b]", i, flag(br == lin_ab));
    jac.record("jacobi", i, jacobi_defect(fa, fb, fc, wx));

    Functional w{smp.density(s, smp.random_ranks(s, false))};
    Element af = normalized(s), bf = normalized(s);
    SF la = SF::linear_field(af), lb = SF::linear_field(bf);
    SF la_fd = SF::custom_field([af](const Functional& v) { return pairing(v, af); });
    SF lb_fd = SF::custom_field([bf](const Functional& v) { return pairing(v, bf); });
    lin_fd.record("finite differences", i, rel(lie_poisson_bracket(la_fd, lb_fd, w), SF::linear_field(af * bf - bf * af)(w)));

    Element g = smp.invertible(s);
    ad.record("{f o Ad*, h o Ad*} = {f, h} o Ad*", i,
              rel(lie_poisson_bracket(pull_back_ad_star(la, g), pull_back_ad_star(lb, g), w),
                  lie_poisson_bracket(la, lb, ad_star_action(g, w))));
    ad.record("pairing", i, rel(pairing(ad_star_action(g, w), af), pairing(w, ad_action(inverse(g), af))));
    Element unit = smp.unitary(s);
    ad.record("unitary keeps hermitian", i, ad_star_action(unit, w).density.distance(ad_star_action(unit, w).density.adjoint()));

    Element xa = normalized(s), xb = normalized(s);
    PhaseVector v{normalized(s), normalized(s)}, v2{xa, xb};
    double anti = std::abs(symplectic_form(g, w, v, v2, SignMode::Antisymmetrized) +
                           symplectic_form(g, w, v2, v, SignMode::Antisymmetrized));
    omega.record("antisymmetrized: O(v,w) = -O(w,v)", i, anti);
    omega.record("antisymmetrized: O(v,v) = 0", i,
                 std::abs(symplectic_form(g, w, v, v, SignMode::Antisymmetrized)));
    double literal = std::abs(symplectic_form(g, w, v, v2, SignMode::Literal) +
                            symplectic_form(g, w, v2, v, SignMode::Literal));
    omega.extra["literal_mode_max_asymmetry"] = std::max(omega.extra.value("literal_mode_max_asymmetry", 0.0), literal);
  }

  std::size_t fd_triples = std::min<std::size_t>(samples, 10);
  for (std::size_t i = 0; i < fd_triples; ++i) {
    Functional w{smp.density(s, smp.random_ranks(s, false))};
    SF f = SF::product_field({normalized(s), normalized(s)});
    SF g = SF::product_field({normalized(s), normalized(s)});
    SF h = SF::linear_field(normalized(s));
    jac_fd.record("jacobi", i, jacobi_defect(f, g, h, w));
    jac_fd.record("antisymmetry", i, std::abs(lie_poisson_bracket(f, g, w) + lie_poisson_bracket(g, f, w)));
    // Leibniz: {f, g h} = {f, g} h + g {f, h}.
    SF gh = SF::product_field({g.factors[0], g.factors[1], h.linear});
    cplx lhs = lie_poisson_bracket(f, gh, w);
    cplx rhs = lie_poisson_bracket(f, g, w) * h(w) + g(w) * lie_poisson_bracket(f, h, w);
    jac_fd.record("leibniz", i, std::abs(lhs - rhs));
  }

  GroupoidSamples<TangentElement> ts;
  GroupoidSamples<CotangentElement> cs;
  for (std::size_t i = 0; i < samples; ++i) {
    Element g = smp.invertible(s), h = smp.invertible(s), k = smp.invertible(s);
    TangentElement ta{g, normalized(s)};
    TangentElement tb{h, inverse(g) * ta.vec * h};
    TangentElement tc{k, inverse(h) * tb.vec * k};
    ts.arrows.push_back(ta);
    ts.pairs.emplace_back(ta, tb);
    ts.triples.emplace_back(ta, tb, tc);
    CotangentElement ca{g, normalized(s)};
    CotangentElement cb{h, inverse(h) * ca.codensity * g};
    CotangentElement cc{k, inverse(k) * cb.codensity * h};
    cs.arrows.push_back(ca);
    cs.pairs.emplace_back(ca, cb);
    cs.triples.emplace_back(ca, cb, cc);
  }
  tg_ax = verify_groupoid_axioms(tangent_groupoid(), ts, 1e-9, "tangent-groupoid");
  ctg_ax = verify_groupoid_axioms(cotangent_groupoid(), cs, 1e-9, "cotangent-groupoid");

  auto cg = conjugation_groupoid(tol);
  auto pdist = [](const PointedArrow& x, const PointedArrow& y) {
    return std::max(x.g.distance(y.g), x.r.distance(y.r));
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& [ta, tb] = ts.pairs[i];
    PointedArrow la = lambda_immersion(ta, tol), lb = lambda_immersion(tb, tol);
    lam.record("S~ o Lambda = S", i, cg.source(la).distance(tg_source(ta)));
    lam.record("T~ o Lambda = T", i, cg.target(la).distance(tg_target(ta)));
    lam.record("Lambda(ab) = Lambda(a) Lambda(b)", i, pdist(lambda_immersion(tg_compose(ta, tb), tol), cg.compose(la, lb)));
    lam.record("Lambda recovers the arrow", i, std::max(la.g.distance(ta.base), (la.g * la.r).distance(ta.vec)));
    const auto& [ca, cb] = cs.pairs[i];
    PointedArrow ma = lambda_star_immersion(ca, tol), mb = lambda_star_immersion(cb, tol);
    lam.record("S~ o Lambda* = S*", i, cg.source(ma).distance(ctg_source(ca)));
    lam.record("T~ o Lambda* = T*", i, cg.target(ma).distance(ctg_target(ca)));
    lam.record("Lambda*(xi eta) = Lambda*(xi) Lambda*(eta)", i,
               pdist(lambda_star_immersion(ctg_compose(ca, cb), tol), cg.compose(ma, mb)));
  }
  // Singular vectors: two tangent arrows with one image and different targets.
  if (s.dims[0] >= 2) {
    Element e11 = Element::matrix_unit(s, 0, 0, 0);
    Element g2 = Element::identity(s) + Element::matrix_unit(s, 0, 0, 1);
    TangentElement a1{Element::identity(s), e11}, a2{g2, g2 * e11};
    json ce = {{"lambda_gap", pdist(lambda_immersion(a1, tol), lambda_immersion(a2, tol))},
               {"target_gap", tg_target(a1).distance(tg_target(a2))}};
    lam.extra["singular_counterexample"] = ce;
  }

  Aggregate agg("poisson");
  for (const Report* part : {&lin, &lin_fd, &jac, &jac_fd, &ad, &tg_ax, &ctg_ax, &lam, &omega}) agg.add(*part);
  Report r = agg.finish();
  r.params = {{"shape", shape_to_json(s)}, {"samples", samples}, {"seed", seed}};
  return r;
}

Report infinite_obstruction_suite(const std::vector<Shape>& shapes, std::size_t samples,
                                  std::uint64_t seed) {
  Report r("infinite-obstruction", 1e-8);
  json out = json::array();
  json shape_list = json::array();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    InfiniteObstruction o = properly_infinite_obstruction(shapes[i], samples, seed + i);
    r.record("impossible", i, o.possible ? 1.0 : 0.0);
    r.record("certificate", i, flag(!o.certificate.empty()));
    r.record("isometries are unitary", i, o.max_range_defect);
    r.record("no proper projection equivalent to 1", i, double(o.proper_projections_equivalent_to_unit));
    out.push_back(o.to_json());
    shape_list.push_back(shape_to_json(shapes[i]));
  }
  r.params = {{"shapes", shape_list}, {"samples", samples}, {"seed", seed}};
  r.extra["obstructions"] = out;
  return r;
}

std::vector<std::string> suite_names() {
  return {"groupoid-axioms", "polar", "inner-action", "free-action", "gns", "semigroup",
          "monogenic", "cuntz", "car", "atlas", "poisson", "infinite-obstruction"};
}

Report run_suite(const std::string& name, const json& o) {
  Shape shape = o.contains("shape") ? shape_from_json(o["shape"]) : Shape{2};
  std::size_t samples = o.value("samples", std::size_t(200));
  std::uint64_t seed = o.value("seed", std::uint64_t(1));
  Report r;
  if (name == "groupoid-axioms") r = groupoid_axioms_suite(shape, samples, seed);
  else if (name == "polar") r = polar_suite(shape, samples, seed);
  else if (name == "inner-action") r = inner_action_suite(shape, samples, seed);
  else if (name == "free-action") r = free_action_suite(shape, samples, seed);
  else if (name == "gns") r = gns_suite(shape, o.value("samples", std::size_t(5)), seed);
  else if (name == "semigroup") r = semigroup_suite(shape, seed);
  else if (name == "monogenic") r = monogenic_suite(o.value("sizes", std::vector<int>{3, 4, 5}));
  else if (name == "cuntz") r = cuntz_suite(o.value("n", 3), o.value("depth", 3));
  else if (name == "car") r = car_suite(o.value("n", 4), o.value("max_len", 3));
  else if (name == "atlas") r = atlas_suite(shape, samples, o.value("isometries", std::size_t(20)), seed);
  else if (name == "poisson") r = poisson_suite(shape, samples, seed);
  else if (name == "infinite-obstruction") {
    std::vector<Shape> shapes;
    if (o.contains("shapes"))
      for (const auto& j : o["shapes"]) shapes.push_back(shape_from_json(j));
    else
      shapes = {shape};
    r = infinite_obstruction_suite(shapes, samples, seed);
  } else {
    fail(ErrorKind::InvalidInput, "unknown suite '" + name + "'");
  }
  r.extra["seed"] = seed;
  return r;
}

}  // namespace wstar
