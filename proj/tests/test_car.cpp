#include <unsupported/Eigen/KroneckerProduct>

#include "test_support.hpp"
#include "wstar/car.hpp"
#include "wstar/error.hpp"

using namespace wstar;

namespace {

/// Jordan-Wigner annihilation operator for mode i (1-based) on N modes, built independently.
Eigen::MatrixXd annihilation(int i, int N) {
  Eigen::MatrixXd z(2, 2), low(2, 2), id = Eigen::MatrixXd::Identity(2, 2);
  z << 1, 0, 0, -1;
  low << 0, 1, 0, 0;
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int k = 1; k <= N; ++k) {
    const Eigen::MatrixXd& f = k < i ? z : k == i ? low : id;
    Eigen::MatrixXd next = Eigen::kroneckerProduct(out, f);
    out = next;
  }
  return out;
}

Eigen::MatrixXd oracle_matrix(const CarWord& w, int N) {
  int dim = 1 << N;
  if (w.zero) return Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(dim, dim) * double(w.sign);
  for (int m : modes_of(w.alpha)) out = out * annihilation(m, N) * annihilation(m, N).transpose();
  for (int m : modes_of(w.beta)) out = out * annihilation(m, N).transpose() * annihilation(m, N);
  for (int m : modes_of(w.gamma)) out = out * annihilation(m, N).transpose();
  for (int m : modes_of(w.delta)) out = out * annihilation(m, N);
  return out;
}

bool equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

TEST_CASE("basic relations") {
  CarWord a1 = CarWord::parse("A{1}");
  CarWord c1 = CarWord::parse("C{1}");
  CHECK(car_mul(a1, c1) == CarWord::parse("+P{1}Q{}C{}A{}"));
  CHECK(car_mul(a1, a1).zero);
  CarWord a2 = CarWord::parse("A{2}");
  CarWord s = car_mul(a1, a2), t = car_mul(a2, a1);
  CHECK(equal(oracle_matrix(s, 2) + oracle_matrix(t, 2), Eigen::MatrixXd::Zero(4, 4)));
}

TEST_CASE("oracle-determined products") {
  const int N = 3;
  struct Case {
    const char* x;
    const char* y;
    const char* expected;
  };
  for (const Case& c : {Case{"P{1}A{2}", "Q{3}C{2}", "+P{1,2}Q{3}C{}A{}"},
                        Case{"A{1}", "C{2}", "-P{}Q{}C{2}A{1}"},
                        Case{"C{3}A{1}", "C{1}A{2}", "+P{1}Q{}C{3}A{2}"},
                        Case{"C{2}A{3}", "C{1}", "+P{}Q{}C{1,2}A{3}"}}) {
    CAPTURE(c.x);
    CAPTURE(c.y);
    CarWord x = CarWord::parse(c.x), y = CarWord::parse(c.y);
    CarWord p = car_mul(x, y);
    CHECK(p.to_string() == c.expected);
    CHECK(equal(oracle_matrix(x, N) * oracle_matrix(y, N), oracle_matrix(p, N)));
  }
  CHECK(car_star(CarWord::parse("C{1,2}")).to_string() == "-P{}Q{}C{}A{1,2}");
}

TEST_CASE("products of every pair of short words on three modes") {
  const int N = 3;
  std::vector<CarWord> words = car_words(N, 2);
  for (const auto& x : words) {
    CHECK(equal(oracle_matrix(car_star(x), N), oracle_matrix(x, N).transpose()));
    for (const auto& y : words) CHECK(equal(oracle_matrix(x, N) * oracle_matrix(y, N), oracle_matrix(car_mul(x, y), N)));
  }
}

TEST_CASE("realization and recognition") {
  CarWord a1 = CarWord::parse("A{1}");
  Element p = jordan_wigner_realize(a1, 2) * jordan_wigner_realize(car_star(a1), 2);
  auto r = car_word_recognize(p, 2);
  REQUIRE(r.has_value());
  CHECK(r->to_string() == "+P{1}Q{}C{}A{}");
  auto z = car_word_recognize(Element::zero(Shape{4}, Backend::Exact), 2);
  REQUIRE(z.has_value());
  CHECK(z->zero);
  auto id = car_word_recognize(Element::identity(Shape{4}, Backend::Exact), 2);
  REQUIRE(id.has_value());
  CHECK(id->to_string() == "+P{}Q{}C{}A{}");
  for (const auto& w : car_words(3, 3)) {
    Element m = jordan_wigner_realize(w, 3);
    Eigen::MatrixXcd expected = oracle_matrix(w, 3).cast<cplx>();
    CHECK((m.to_float().float_blocks()[0] - expected).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("x x* is idempotent") {
  for (const auto& w : car_words(3, 3)) {
    Eigen::MatrixXd m = oracle_matrix(w, 3);
    Eigen::MatrixXd e = m * m.transpose();
    CHECK(equal(e * e, e));
    CarWord sym = car_mul(w, car_star(w));
    CHECK(equal(oracle_matrix(sym, 3), e));
  }
}

TEST_CASE("invalid words") {
  CHECK_THROWS_AS(CarWord::parse("P{1}Q{1}"), Error);
  CHECK_THROWS_AS(CarWord::parse("C{2,1}"), Error);
  CHECK_THROWS_AS(CarWord::parse("X{1}"), Error);
}

TEST_CASE("exhaustive verification on small systems") {
  for (int n = 1; n <= 3; ++n) CHECK(car_verify(n, 3).pass());
}
