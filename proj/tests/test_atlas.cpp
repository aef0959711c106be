#include "test_support.hpp"
#include "wstar/atlas.hpp"
#include "wstar/error.hpp"
#include "wstar/groupoid.hpp"
#include "wstar/sampler.hpp"

using namespace wstar;
using namespace wstar::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

Element rotated_line(double t) {
  double c = std::cos(t), s = std::sin(t);
  return el({{c * c, c * s}, {c * s, s * s}});
}

}  // namespace

TEST_CASE("chart domain") {
  Element p = diag({1, 0});
  CHECK(in_chart_domain(half_ones(), p));
  CHECK_FALSE(in_chart_domain(diag({0, 1}), p));
  CHECK(in_chart_domain(p, p));
}

TEST_CASE("chart point of the diagonal line") {
  Element p = diag({1, 0});
  ChartPoint c = chart_point(p, half_ones());
  check_close(c.x, el({{1, 0}, {1, 0}}));
  check_close(c.y, el({{0, 0}, {1, 0}}));
  ChartPoint centre = chart_point(p, p);
  check_close(centre.x, p);
  CHECK(centre.y.is_zero(1e-14));
  CHECK(kind_of([&] { chart_point(p, diag({0, 1})); }) == ErrorKind::ChartDomain);
}

TEST_CASE("chart inverse") {
  Element p = diag({1, 0});
  check_close(chart_phi_inv(p, Element::zero(Shape{2})), p);
  check_close(chart_phi_inv(p, el({{0, 0}, {1, 0}})), half_ones());
  CHECK_THROWS_AS(chart_phi_inv(p, el({{0, 1}, {0, 0}})), Error);
}

TEST_CASE("chart round trips on random points") {
  Sampler smp(3);
  Shape s{3, 2};
  for (int i = 0; i < 50; ++i) {
    Element p = smp.projection(s);
    Element y = (Element::identity(s) - p) * smp.gaussian(s) * p;
    Element q = chart_phi_inv(p, y);
    CHECK(in_chart_domain(q, p));
    check_close(chart_phi(p, q), y, 1e-9);
    Element x = section_sigma(p, q);
    check_close(groupoid_source(x), p, 1e-9);
    check_close(groupoid_target(x), q, 1e-9);
  }
}

TEST_CASE("lattice transition against composed charts") {
  Element p = diag({1, 0}), p2 = half_ones();
  for (double t : {0.01, 0.1, 0.3}) {
    Element y = el({{0, 0}, {t, 0}});
    Element direct = lattice_transition(p, p2, y);
    Element composed = chart_phi(p2, chart_phi_inv(p, y));
    check_close(direct, composed, 1e-12);
  }
  Element y = el({{0, 0}, {0.4, 0}});
  check_close(lattice_transition(p, p, y), y, 1e-14);
  // The line at angle 3pi/4 is orthogonal to the centre of the second chart.
  double t = std::tan(3 * M_PI / 4);
  CHECK(kind_of([&] { lattice_transition(p, p2, el({{0, 0}, {t, 0}})); }) == ErrorKind::OverlapViolation);
  CHECK(in_chart_domain(rotated_line(0.2), p));
}

TEST_CASE("groupoid chart at the centre") {
  Element p = diag({1, 0});
  Element pt = diag({0, 1});
  Element x = el({{0, 0}, {2, 0}});
  GroupoidCoords c = groupoid_chart_psi(pt, p, x);
  CHECK(c.target.is_zero(1e-14));
  CHECK(c.source.is_zero(1e-14));
  check_close(c.core, x);
}

TEST_CASE("groupoid chart round trips and transitions") {
  Sampler smp(5);
  Shape s{2};
  Element p = diag({1, 0});
  int tested = 0;
  for (int i = 0; i < 50; ++i) {
    Element x = smp.of_rank(s, {1});
    if (!in_chart_domain(groupoid_source(x), p) || !in_chart_domain(groupoid_target(x), p)) continue;
    ++tested;
    GroupoidCoords c = groupoid_chart_psi(p, p, x);
    check_close(groupoid_chart_psi_inv(p, p, c), x, 1e-9);
    Element p2 = half_ones();
    if (!in_chart_domain(groupoid_source(x), p2) || !in_chart_domain(groupoid_target(x), p2)) continue;
    GroupoidCoords moved = groupoid_transition(p, p, p2, p2, c);
    CHECK(coords_distance(moved, groupoid_chart_psi(p2, p2, x)) < 1e-8);
  }
  CHECK(tested > 10);
}

TEST_CASE("rescaled core of a partial isometry") {
  Sampler smp(7);
  Shape s{3};
  Element p = smp.projection(s, {1});
  int tested = 0;
  for (int i = 0; i < 30; ++i) {
    Element u = smp.partial_isometry(s, {1});
    if (!in_chart_domain(groupoid_source(u), p) || !in_chart_domain(groupoid_target(u), p)) continue;
    ++tested;
    CHECK(rescaled_core_defect(p, p, u) < 1e-9);
  }
  CHECK(tested > 5);
}

TEST_CASE("derivative of the involution squares to one") {
  InvolutionCheck id = involution_derivative_check(Element::identity(Shape{2}));
  CHECK(id.square_defect < 1e-5);
  CHECK(id.fixed_defect < 1e-12);
  InvolutionCheck flip = involution_derivative_check(el({{0, 0}, {1, 0}}));
  CHECK(flip.square_defect < 1e-4);
  CHECK(flip.tangent_dim > 0);
  CHECK_THROWS_AS(involution_derivative_check(Element::identity(Shape{2}), 1e-13), Error);
}
