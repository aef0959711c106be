#include <set>

#include "test_support.hpp"
#include "wstar/error.hpp"
#include "wstar/lattice.hpp"
#include "wstar/sampler.hpp"
#include "wstar/semigroup.hpp"

using namespace wstar;
using namespace wstar::testing;

namespace {

using IntMatrix = std::vector<std::vector<int>>;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  std::size_t n = a.size();
  IntMatrix t(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
  return t;
}

/// Closure of real integer matrices under products and transposes, by brute force.
std::size_t brute_force_closure(const std::vector<IntMatrix>& gens) {
  std::set<IntMatrix> seen(gens.begin(), gens.end());
  for (const auto& g : gens) seen.insert(transpose(g));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IntMatrix> cur(seen.begin(), seen.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (seen.insert(multiply(a, b)).second) grew = true;
  }
  return seen.size();
}

IntMatrix shift_matrix(int n) {
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i + 1 < n; ++i) m[i + 1][i] = 1;
  return m;
}

Element shift_element(int n) {
  QMatrix m(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i + 1, i) = GaussRat(1);
  return Element(Element::ExactBlocks{m});
}

Element exact_unit(int n, int i, int j) { return Element::matrix_unit(Shape{n}, 0, i, j, Backend::Exact); }

}  // namespace

TEST_CASE("closure of a single projection") {
  Closure c = generate_closure({exact({{1, 0}, {0, 0}})});
  CHECK(c.closed);
  CHECK(c.size() == 1);
  CHECK(check_inverse_semigroup(c).holds);
}

TEST_CASE("truncated shift closures against a brute-force oracle") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    Closure c = generate_closure({shift_element(n)});
    CHECK(c.closed);
    CHECK(c.size() == brute_force_closure({shift_matrix(n)}));
    for (const auto& e : c.elements)
      if (!e.is_zero()) CHECK((e * e.adjoint() * e).equals(e));
  }
  // Frozen values of the oracle above.
  CHECK(brute_force_closure({shift_matrix(3)}) == 14);
  CHECK(brute_force_closure({shift_matrix(4)}) == 30);
  CHECK(brute_force_closure({shift_matrix(5)}) == 55);
}

TEST_CASE("matrix units of M2 and M3") {
  Closure c2 = generate_closure(standard_matrix_units(Shape{2}, 0).generators());
  CHECK(c2.size() == 5);
  CHECK(c2.zero_index >= 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(c2.index_of(exact_unit(2, i, j)) >= 0);
  CHECK(check_inverse_semigroup(c2).holds);
  Closure c3 = generate_closure(standard_matrix_units(Shape{3}, 0).generators());
  CHECK(c3.size() == 10);
  CHECK(check_inverse_semigroup(c3).holds);
  CHECK_FALSE(check_clifford(c3).holds);
}

TEST_CASE("non-commuting projections do not generate an inverse semigroup") {
  QMatrix q(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q(i, j) = GaussRat(mpq_class(1, 2), 0);
  Element p = exact({{1, 0}, {0, 0}});
  Element h(Element::ExactBlocks{q});
  Element pq = p * h;
  CHECK_FALSE((pq * pq.adjoint() * pq).equals(pq));
  Closure c = generate_closure({p, h}, 200);
  SemigroupCheck r = check_inverse_semigroup(c);
  CHECK_FALSE(r.holds);
  CHECK(r.witness.has_value());
}

TEST_CASE("commuting projections form a Clifford semigroup") {
  Closure c = generate_closure({exact({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}), exact({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
  CHECK(check_inverse_semigroup(c).holds);
  CHECK(check_clifford(c).holds);
}

TEST_CASE("conditions on projections and partial isometries") {
  std::vector<Element> E = {diag({1, 0}), diag({0, 1}), Element::zero(Shape{2}), Element::identity(Shape{2})};
  std::vector<Element> U = {el({{0, 1}, {0, 0}}), el({{0, 0}, {1, 0}}), diag({1, 0}), diag({0, 1})};
  CHECK(check_UE_conditions(E, U).holds);
  CHECK_FALSE(check_UE_conditions({diag({1, 0}), half_ones()}, {Element::identity(Shape{2})}).holds);
  Sampler smp(3);
  CHECK(check_UE_conditions({Element::identity(Shape{3})}, {smp.unitary(Shape{3}), smp.unitary(Shape{3})}).holds);
}

TEST_CASE("abelian dichotomy") {
  DichotomyReport diagonal = abelian_dichotomy_check(Shape{1, 1, 1}, 100, 1);
  CHECK(diagonal.abelian);
  CHECK(diagonal.holds);
  DichotomyReport factor = abelian_dichotomy_check(Shape{2}, 100, 1);
  CHECK_FALSE(factor.abelian);
  REQUIRE(factor.counterexample.has_value());
  Element pq = factor.counterexample->first * factor.counterexample->second;
  CHECK_FALSE((pq * pq.adjoint() * pq).equals(pq));
  DichotomyReport empty = abelian_dichotomy_check(Shape{1}, 0, 1);
  CHECK(empty.holds);
  CHECK(empty.sampled == 0);
}

TEST_CASE("matrix unit systems and partial bijections") {
  MatrixUnitSystem sys = standard_matrix_units(Shape{2}, 0);
  Element id = partial_bijection_lift({{0, 0}, {1, 1}}, sys);
  CHECK(id.equals(sys.p[0] + sys.p[1]));
  Element swap = partial_bijection_lift({{0, 1}, {1, 0}}, sys);
  CHECK(swap.equals(exact({{0, 1}, {1, 0}})));
  CHECK(partial_bijection_of(swap, sys) == PartialBijection{{0, 1}, {1, 0}});
  CHECK(compose(PartialBijection{{0, 1}}, PartialBijection{{1, 0}}) == PartialBijection{{1, 1}});
  CHECK(compose(PartialBijection{{0, 1}}, PartialBijection{{0, 1}}).empty());
  CHECK(partial_bijection_lift(compose({{0, 1}}, {{0, 1}}), sys).is_zero());
}

TEST_CASE("matrix unit system across blocks") {
  Shape s{2, 2};
  Sampler smp(5);
  Element a = Element::embed(s, 0, Eigen::MatrixXcd(diag({1, 0}).float_blocks()[0])) +
              Element::embed(s, 1, Eigen::MatrixXcd(diag({1, 0}).float_blocks()[0]));
  Element b = Element::identity(s) - a;
  auto w = mvn_equivalent(Projection::from_element(a), Projection::from_element(b));
  REQUIRE(w.has_value());
  MatrixUnitSystem sys = matrix_unit_system({a, b}, {{{1, 0}, *w}, {{0, 1}, w->adjoint()}});
  CHECK(sys.p.size() == 2);
  CHECK_THROWS_AS(matrix_unit_system({a, a}, {}), Error);
}

TEST_CASE("powers of partial isometries") {
  CHECK(is_power_partial_isometry(shift_element(3).to_float()).holds);
  Element v = el({{0, 0, 0}, {1, 0, 0}, {0, 0.6, 0}});
  PowerCheck bad = is_power_partial_isometry(v);
  CHECK_FALSE(bad.holds);
  CHECK(bad.failing_power == 1);
  Sampler smp(7);
  CHECK(is_power_partial_isometry(smp.unitary(Shape{3})).holds);
}

TEST_CASE("projection and unitary generation") {
  Element p = diag({1, 0});
  CHECK(projection_unitary_generation_check(p, diag({cplx(0, 1), 1}), 4).holds);
  CHECK(projection_unitary_generation_check(p, el({{0, 1}, {1, 0}}), 4).holds);
  CHECK_FALSE(projection_unitary_generation_check(p, el({{0.6, -0.8}, {0.8, 0.6}}), 4).holds);
}

TEST_CASE("no properly infinite projections in finite shapes") {
  for (const Shape& s : {Shape{1}, Shape{3}, Shape{2, 1}}) {
    InfiniteObstruction o = properly_infinite_obstruction(s, 10, 1);
    CHECK_FALSE(o.possible);
    CHECK_FALSE(o.certificate.empty());
    CHECK(o.max_range_defect < 1e-9);
  }
}
