#include "test_support.hpp"
#include "wstar/error.hpp"
#include "wstar/gns.hpp"
#include "wstar/lattice.hpp"
#include "wstar/sampler.hpp"

using namespace wstar;
using namespace wstar::testing;

namespace {

double identity_defect(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return (m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

/// Independent dimension count: n_b times the rank of each density block.
int expected_dim(const Element& rho) {
  int d = 0;
  for (const auto& b : rho.float_blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > 1e-9) d += int(b.rows());
  }
  return d;
}

Element full_rank_partial_isometry_to(const Element& from, const Element& to) {
  return mvn_equivalent(Projection::from_element(from), Projection::from_element(to)).value();
}

}  // namespace

TEST_CASE("GNS dimensions") {
  CHECK(gns_space(Functional{diag({1, 0})}).dim() == 2);
  for (int n = 1; n <= 4; ++n) {
    Element rho = Element::identity(Shape{n}).scaled(cplx(1.0 / n));
    CHECK(gns_space(Functional{rho}).dim() == n * n);
  }
  CHECK(gns_space(Functional{Element::zero(Shape{3})}).dim() == 0);
  Sampler smp(3);
  for (int i = 0; i < 10; ++i) {
    Shape s{3, 2};
    Element rho = smp.density(s, smp.random_ranks(s, false));
    CHECK(gns_space(Functional{rho}).dim() == expected_dim(rho));
  }
}

TEST_CASE("GNS basis is orthonormal") {
  Sampler smp(5);
  Shape s{3};
  GnsSpace h = gns_space(Functional{smp.density(s, {2})});
  Eigen::MatrixXcd gram(h.dim(), h.dim());
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j) gram(i, j) = h.inner(h.basis[i], h.basis[j]);
  CHECK(identity_defect(gram) < 1e-10);
}

TEST_CASE("non-positive functionals are rejected") {
  try {
    (void)gns_space(Functional{diag({1, -1})});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
  }
}

TEST_CASE("representation") {
  Sampler smp(7);
  Shape s{3};
  GnsSpace h = gns_space(Functional{smp.faithful_density(s)});
  CHECK(identity_defect(gns_rep(Element::identity(s), h)) < 1e-10);
  Element x = smp.gaussian(s), y = smp.gaussian(s);
  CHECK((gns_rep(x * y, h) - gns_rep(x, h) * gns_rep(y, h)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((gns_rep(x.adjoint(), h) - gns_rep(x, h).adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(gns_rep(x, h).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("fiber map of the flip arrow") {
  Element u = el({{0, 0}, {1, 0}});
  FiberMap f = groupoid_rep_phi(u, Functional{diag({1, 0})});
  CHECK(f.source.dim() == 2);
  CHECK(f.target.dim() == 2);
  check_close(f.target.state.density, diag({0, 1}));
  CHECK(identity_defect(f.matrix.adjoint() * f.matrix) < 1e-12);
  CHECK(identity_defect(f.matrix * f.matrix.adjoint()) < 1e-12);
}

TEST_CASE("unit arrows and inverses") {
  Sampler smp(11);
  Shape s{3};
  Functional w{smp.density(s, {2})};
  Element p = state_support(w);
  CHECK(identity_defect(groupoid_rep_phi(p, w).matrix) < 1e-10);

  Element target = smp.projection(s, {2});
  Element u = full_rank_partial_isometry_to(p, target);
  FiberMap there = groupoid_rep_phi(u, w);
  FiberMap back = fiber_map_between(u.adjoint(), there.target, there.source);
  CHECK(identity_defect(back.matrix * there.matrix) < 1e-10);
}

TEST_CASE("moment mismatch") {
  try {
    (void)groupoid_rep_phi(el({{0, 0}, {1, 0}}), Functional{diag({0, 1})});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MomentMismatch);
  }
}

TEST_CASE("direct sums, faithfulness and the commutant") {
  Sampler smp(13);
  Shape s{3};
  Functional w0{smp.density(s, {1})};
  Element p0 = state_support(w0);
  Element q = smp.projection(s, {1});
  Element u = full_rank_partial_isometry_to(p0, q);
  Functional w1 = I_star(u, w0);
  Functional mixed{Element::identity(s).scaled(cplx(1.0 / 3))};
  DirectSum sum = direct_sum({w0, w1, mixed});
  CHECK(sum.faithful());
  CHECK(sum.supports_cover_unit());
  CHECK(sum.find(w1, 1e-9) == 1);

  Eigen::MatrixXcd ext = extend_fiber_map(sum, 0, 1, u);
  CHECK(commutant_defect(ext, sum) < 1e-10);

  Element noncentral = diag({1, 2, 3});
  CHECK(commutant_defect(sum.rep(noncentral), sum) > 1e-3);
  CHECK(commutant_defect(sum.rep(Element::identity(s).scaled(cplx(2, 1))), sum) < 1e-10);

  Element x = smp.gaussian(s);
  CHECK(sum.rep(x).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("a pure state alone is faithful while its support is not the unit") {
  DirectSum sum = direct_sum({Functional{diag({1, 0, 0})}});
  CHECK(sum.faithful());
  CHECK_FALSE(sum.supports_cover_unit());
  DirectSum two_blocks = direct_sum({Functional{Element::embed(Shape{2, 1}, 0, Eigen::MatrixXcd::Identity(2, 2) * 0.5)}});
  CHECK_FALSE(two_blocks.faithful());
}

TEST_CASE("local bisections") {
  Shape s{2};
  Functional a{diag({1, 0})}, b{diag({0, 1})};
  DirectSum sum = direct_sum({a, b});

  BisectionRep unit = bisection_rep({{0}, {diag({1, 0})}}, sum);
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(sum.dim, sum.dim);
  proj.block(0, 0, 2, 2).setIdentity();
  CHECK((unit.op - proj).cwiseAbs().maxCoeff() < 1e-12);

  Element flip = el({{0, 0}, {1, 0}});
  BisectionRep swap = bisection_rep({{0, 1}, {flip, flip.adjoint()}}, sum);
  CHECK(swap.isometry_defect < 1e-12);
  CHECK(swap.commutant_defect < 1e-12);
  CHECK((swap.op * swap.op - Eigen::MatrixXcd::Identity(sum.dim, sum.dim)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(swap.op.block(0, 0, 2, 2).cwiseAbs().maxCoeff() < 1e-12);

  BisectionRep empty = bisection_rep({{}, {}}, sum);
  CHECK(empty.op.cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(bisection_rep({{0, 1}, {flip, diag({0, 1})}}, sum), Error);
}
