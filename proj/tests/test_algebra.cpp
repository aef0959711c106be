#include <Eigen/SVD>

#include "test_support.hpp"
#include "wstar/error.hpp"
#include "wstar/json_io.hpp"
#include "wstar/sampler.hpp"

using namespace wstar;
using namespace wstar::testing;

TEST_CASE("adjoint and products on small matrices") {
  Element x = el({{0, 2}, {0, 0}});
  check_close(x.adjoint(), el({{0, 0}, {2, 0}}));
  check_close(x.adjoint().adjoint(), x);
  CHECK((diag({1, 0}) * diag({0, 1})).is_zero());
  Element y = el({{0, cplx(0, 1)}, {0, 0}});
  check_close(y.adjoint(), el({{0, 0}, {cplx(0, -1), 0}}));
}

TEST_CASE("shape mismatch is rejected") {
  Element a = Element::identity(Shape{2});
  Element b = Element::identity(Shape{2, 1});
  CHECK_THROWS_AS(a * b, Error);
  try {
    (void)(a + b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShapeMismatch);
  }
}

TEST_CASE("operator norm against an independent SVD") {
  CHECK(operator_norm(diag({1, 0})) == doctest::Approx(1.0));
  CHECK(operator_norm(el({{0, 2}, {0, 0}})) == doctest::Approx(2.0));
  CHECK(operator_norm(Element::zero(Shape{3})) == 0.0);
  Sampler smp(3);
  Element g = smp.gaussian(Shape{3, 2});
  double expected = 0.0;
  for (const auto& b : g.float_blocks())
    expected = std::max(expected, Eigen::JacobiSVD<Eigen::MatrixXcd>(b).singularValues()(0));
  CHECK(operator_norm(g) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("square roots of positive elements") {
  check_close(sqrt_positive(diag({4, 0})), diag({2, 0}));
  check_close(sqrt_positive(Element::identity(Shape{2})), Element::identity(Shape{2}));
  check_close(sqrt_positive(half_ones()), half_ones());
  Sampler smp(5);
  Element h = smp.gaussian(Shape{3});
  Element pos = h.adjoint() * h;
  Element r = sqrt_positive(pos);
  check_close(r * r, pos, 1e-10);
  CHECK(is_positive(r));
}

TEST_CASE("polar decomposition examples") {
  Polar p = polar_decompose(el({{0, 2}, {0, 0}}));
  check_close(p.u, el({{0, 1}, {0, 0}}));
  check_close(p.abs, diag({0, 2}));
  Polar z = polar_decompose(Element::zero(Shape{2}));
  CHECK(z.u.is_zero());
  CHECK(z.abs.is_zero());
  Sampler smp(11);
  Element w = smp.unitary(Shape{3});
  Polar pw = polar_decompose(w);
  check_close(pw.u, w, 1e-10);
  check_close(pw.abs, Element::identity(Shape{3}), 1e-10);
}

TEST_CASE("polar decomposition on random elements") {
  Sampler smp(17);
  Shape s{2, 3};
  for (int i = 0; i < 20; ++i) {
    Element x = smp.random_rank(s);
    Polar p = polar_decompose(x);
    check_close(p.u * p.abs, x, 1e-10);
    check_close(p.u.adjoint() * p.u, right_support(x), 1e-10);
    CHECK(is_partial_isometry(p.u));
  }
}

TEST_CASE("supports") {
  Element x = el({{0, 2}, {0, 0}});
  check_close(left_support(x), diag({1, 0}));
  check_close(right_support(x), diag({0, 1}));
  check_close(left_support(half_ones()), half_ones());
  check_close(right_support(half_ones()), half_ones());
  Element inv = el({{1, 2}, {3, 4}});
  check_close(left_support(inv), Element::identity(Shape{2}));
  check_close(right_support(inv), Element::identity(Shape{2}));
}

TEST_CASE("predicates") {
  CHECK(is_projection(half_ones()));
  CHECK_FALSE(is_projection(el({{0, 1}, {0, 0}})));
  CHECK(is_partial_isometry(el({{0, 1}, {0, 0}})));
  CHECK_FALSE(is_partial_isometry(el({{0, 2}, {0, 0}})));
  CHECK_FALSE(is_central(diag({1, 2})));
  CHECK(is_central(Element::identity(Shape{2}).scaled(cplx(3, 1))));
  Element e = Element::identity(Shape{2, 3});
  Element z = Element::zero(Shape{2, 3});
  Element central = Element::embed(Shape{2, 3}, 0, Eigen::MatrixXcd::Identity(2, 2));
  CHECK(is_central(central));
  CHECK(is_central(e));
  CHECK(is_central(z));
}

TEST_CASE("exact backend arithmetic and supports") {
  Element x = exact({{0, 2}, {0, 0}});
  CHECK(x.is_exact());
  Element l = left_support(x);
  CHECK(l.is_exact());
  CHECK(l.equals(exact({{1, 0}, {0, 0}})));
  CHECK(right_support(x).equals(exact({{0, 0}, {0, 1}})));
  Element pinv = pseudo_inverse(x);
  QMatrix half(2, 2);
  half(1, 0) = GaussRat(mpq_class(1, 2), 0);
  CHECK(pinv.equals(Element(Element::ExactBlocks{half})));
  CHECK(exact_trace(exact({{1, 5}, {7, 3}})) == GaussRat(4));
}

TEST_CASE("backend conversion round trips") {
  Element x = el({{0.25, cplx(0, -1.5)}, {3, 0}});
  Element q = x.to_exact();
  CHECK(q.is_exact());
  CHECK(q.to_float().equals(x));
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(1, 1);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Element::embed(Shape{1}, 0, bad).to_exact(), Error);
}

TEST_CASE("json round trip in both backends") {
  Sampler smp(23);
  Element x = smp.gaussian(Shape{2, 1});
  CHECK(element_from_json(element_to_json(x)).equals(x));
  Element q = exact({{1, -2}, {0, 7}});
  json j = element_to_json(q);
  CHECK(element_from_json(j).equals(q));
  CHECK(element_from_json(json::parse(j.dump())).equals(q));
  CHECK_THROWS_AS(element_from_json(json{{"shape", {2}}}), Error);
}
