#include "test_support.hpp"
#include "wstar/error.hpp"
#include "wstar/poisson.hpp"
#include "wstar/sampler.hpp"

using namespace wstar;
using namespace wstar::testing;

namespace {

Element unit(int i, int j) { return Element::matrix_unit(Shape{2}, 0, i, j); }

}  // namespace

TEST_CASE("bracket of matrix units") {
  Functional w{unit(0, 0)};
  cplx v = lie_poisson_bracket(ScalarField::linear_field(unit(0, 1)), ScalarField::linear_field(unit(1, 0)), w);
  CHECK(std::abs(v - cplx(1.0)) < 1e-14);
  ScalarField f = ScalarField::linear_field(el({{1, 2}, {3, 4}}));
  CHECK(std::abs(lie_poisson_bracket(f, f, w)) == 0.0);
  CHECK(std::abs(lie_poisson_bracket(ScalarField::linear_field(diag({1, 2})), ScalarField::linear_field(diag({3, 5})), w)) == 0.0);
}

TEST_CASE("finite-difference gradients of linear fields") {
  Sampler smp(3);
  Shape s{2, 1};
  Element a = smp.gaussian(s);
  Functional w{smp.hermitian(s)};
  ScalarField f = ScalarField::custom_field([a](const Functional& v) { return pairing(v, a); });
  check_close(fd_gradient(f, w), a, 1e-8);
  ScalarField broken = ScalarField::custom_field([](const Functional&) -> cplx { throw Error(ErrorKind::InvalidInput, "no"); });
  try {
    (void)fd_gradient(broken, w);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GradientFailure);
  }
}

TEST_CASE("Jacobi identity") {
  Sampler smp(5);
  Shape s{3};
  Functional w{smp.hermitian(s)};
  ScalarField a = ScalarField::linear_field(smp.gaussian(s));
  ScalarField b = ScalarField::linear_field(smp.gaussian(s));
  ScalarField c = ScalarField::linear_field(smp.gaussian(s));
  CHECK(jacobi_defect(a, b, c, w) < 1e-12);
  CHECK(jacobi_defect(a, a, a, w) < 1e-12);

  Element ea = Element::matrix_unit(s, 0, 0, 1, Backend::Exact);
  Element eb = Element::matrix_unit(s, 0, 1, 2, Backend::Exact);
  Element ec = Element::matrix_unit(s, 0, 2, 0, Backend::Exact) + Element::matrix_unit(s, 0, 1, 1, Backend::Exact);
  Functional we{Element::identity(s, Backend::Exact) + Element::matrix_unit(s, 0, 0, 2, Backend::Exact)};
  CHECK(jacobi_defect(ScalarField::linear_field(ea), ScalarField::linear_field(eb), ScalarField::linear_field(ec), we) == 0.0);

  Shape t{2};
  Functional wt{smp.hermitian(t)};
  ScalarField p = ScalarField::product_field({smp.hermitian(t), smp.hermitian(t)});
  ScalarField q = ScalarField::product_field({smp.hermitian(t), smp.hermitian(t)});
  ScalarField r = ScalarField::linear_field(smp.hermitian(t));
  CHECK(jacobi_defect(p, q, r, wt) < 1e-5);
}

TEST_CASE("coadjoint action") {
  Sampler smp(7);
  Shape s{2};
  Functional w{smp.hermitian(s)};
  check_close(ad_star_action(Element::identity(s), w).density, w.density);
  Element u = smp.unitary(s);
  Element moved = ad_star_action(u, w).density;
  CHECK(is_hermitian(moved));
  Element g = smp.invertible(s);
  Element x = smp.gaussian(s);
  cplx lhs = pairing(ad_star_action(g, w), x);
  cplx rhs = pairing(w, ad_action(inverse(g), x));
  CHECK(std::abs(lhs - rhs) < 1e-10);
  CHECK_THROWS_AS(ad_star_action(diag({1, 0}), w), Error);

  ScalarField a = ScalarField::linear_field(smp.gaussian(s));
  ScalarField b = ScalarField::linear_field(smp.gaussian(s));
  cplx before = lie_poisson_bracket(pull_back_ad_star(a, g), pull_back_ad_star(b, g), w);
  cplx after = lie_poisson_bracket(a, b, ad_star_action(g, w));
  CHECK(std::abs(before - after) < 1e-10);
}

TEST_CASE("tangent groupoid") {
  Sampler smp(11);
  Shape s{2};
  TangentElement a{smp.invertible(s), smp.gaussian(s)};
  TangentElement inv = tg_inverse(a);
  TangentElement left = tg_compose(inv, a);
  check_close(left.base, Element::identity(s), 1e-10);
  check_close(left.vec, tg_source(a), 1e-10);
  TangentElement e = tg_identity(Element::identity(s));
  check_close(tg_source(e), Element::identity(s));

  Groupoid<TangentElement, Element> g = tangent_groupoid();
  GroupoidSamples<TangentElement> samples;
  for (int i = 0; i < 30; ++i) {
    TangentElement x{smp.invertible(s), smp.gaussian(s)};
    Element h = smp.invertible(s);
    TangentElement y{h, tg_source(x) * h};
    Element k = smp.invertible(s);
    TangentElement z{k, tg_source(y) * k};
    samples.arrows.push_back(x);
    samples.pairs.emplace_back(x, y);
    samples.triples.emplace_back(x, y, z);
  }
  CHECK(verify_groupoid_axioms(g, samples, 1e-9).pass());
  CHECK_THROWS_AS(tg_compose(a, TangentElement{smp.invertible(s), smp.gaussian(s)}), Error);
}

TEST_CASE("cotangent groupoid") {
  Sampler smp(13);
  Shape s{2};
  CotangentElement at_unit{Element::identity(s), smp.gaussian(s)};
  check_close(ctg_source(at_unit), at_unit.codensity);
  check_close(ctg_target(at_unit), at_unit.codensity);

  Groupoid<CotangentElement, Element> g = cotangent_groupoid();
  GroupoidSamples<CotangentElement> samples;
  for (int i = 0; i < 30; ++i) {
    CotangentElement x{smp.invertible(s), smp.gaussian(s)};
    Element h = smp.invertible(s);
    CotangentElement y{h, inverse(h) * ctg_source(x)};
    Element k = smp.invertible(s);
    CotangentElement z{k, inverse(k) * ctg_source(y)};
    samples.arrows.push_back(x);
    samples.pairs.emplace_back(x, y);
    samples.triples.emplace_back(x, y, z);
  }
  CHECK(verify_groupoid_axioms(g, samples, 1e-9).pass());
}

TEST_CASE("immersions into the conjugation groupoid") {
  Shape s{2};
  TangentElement zero{Element::identity(s), Element::zero(s)};
  PointedArrow z = lambda_immersion(zero);
  CHECK(z.g.is_zero(1e-14));
  CHECK(z.r.is_zero(1e-14));

  Element a = el({{1, 2}, {2, 4}});
  PointedArrow at_unit = lambda_immersion({Element::identity(s), a});
  check_close(at_unit.g, left_support(a), 1e-12);
  check_close(at_unit.r, a);

  Sampler smp(17);
  Groupoid<PointedArrow, Element> target = conjugation_groupoid();
  for (int i = 0; i < 20; ++i) {
    TangentElement x{smp.invertible(s), smp.invertible(s)};
    Element h = smp.invertible(s);
    TangentElement y{h, tg_source(x) * h};
    PointedArrow lx = lambda_immersion(x), ly = lambda_immersion(y);
    PointedArrow lxy = lambda_immersion(tg_compose(x, y));
    CHECK(target.arrow_distance(target.compose(lx, ly), lxy) < 1e-8);
    CHECK(target.source(lx).distance(tg_source(x)) < 1e-10);
    CHECK(target.target(lx).distance(tg_target(x)) < 1e-8);
  }
}

TEST_CASE("a singular vector breaks injectivity") {
  Shape s{2};
  TangentElement a1{Element::identity(s), diag({1, 0})};
  TangentElement a2{el({{1, 1}, {0, 1}}), el({{1, 1}, {0, 1}}) * diag({1, 0})};
  PointedArrow l1 = lambda_immersion(a1), l2 = lambda_immersion(a2);
  CHECK(l1.g.distance(l2.g) < 1e-12);
  CHECK(l1.r.distance(l2.r) < 1e-12);
  CHECK(tg_target(a1).distance(tg_target(a2)) > 0.5);
}

TEST_CASE("symplectic form sign modes") {
  Sampler smp(19);
  Shape s{2};
  Element g = smp.invertible(s);
  Functional rho{smp.hermitian(s)};
  PhaseVector v{smp.gaussian(s), smp.gaussian(s)};
  PhaseVector w{smp.gaussian(s), smp.gaussian(s)};
  CHECK(std::abs(symplectic_form(g, rho, v, v, SignMode::Antisymmetrized)) < 1e-12);
  cplx vw = symplectic_form(g, rho, v, w, SignMode::Antisymmetrized);
  cplx wv = symplectic_form(g, rho, w, v, SignMode::Antisymmetrized);
  CHECK(std::abs(vw + wv) < 1e-12);
  cplx lvw = symplectic_form(g, rho, v, w, SignMode::Literal);
  cplx lwv = symplectic_form(g, rho, w, v, SignMode::Literal);
  CHECK(std::abs(lvw + lwv) > 1e-6);
  PhaseVector vt{v.tangent, Element::zero(s)}, wt{w.tangent, Element::zero(s)};
  CHECK(std::abs(symplectic_form(g, rho, vt, wt, SignMode::Literal) + symplectic_form(g, rho, wt, vt, SignMode::Literal)) < 1e-12);
  CHECK(parse_sign_mode("antisymmetrized") == SignMode::Antisymmetrized);
  CHECK_THROWS_AS(parse_sign_mode("other"), Error);
}
