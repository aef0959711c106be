#include <random>

#include "test_support.hpp"
#include "wstar/error.hpp"
#include "wstar/monogenic.hpp"
#include "wstar/semigroup.hpp"

using namespace wstar;
using namespace wstar::testing;

namespace {

Element shift(int n) {
  QMatrix m(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i + 1, i) = GaussRat(1);
  return Element(Element::ExactBlocks{m});
}

/// Direct evaluation of a word, letter by letter.
Element evaluate_word(const std::string& w, const Element& u) {
  Element out = Element::identity(u.shape(), u.backend());
  for (char c : w) out = out * (c == 'u' ? u : u.adjoint());
  return out;
}

}  // namespace

TEST_CASE("normal forms of short words") {
  MonogenicNF a = monogenic_normal_form("uUu");
  CHECK(a.k == 0);
  CHECK(a.l == 0);
  CHECK(a.m == 1);
  CHECK(a.kind == MonogenicNF::Kind::Positive);
  GluskinForm g = gluskin_form(a);
  CHECK(g.a == 1);
  CHECK(g.b == 1);
  CHECK(g.c == 1);

  MonogenicNF b = monogenic_normal_form("Uu");
  CHECK(b.k == 1);
  CHECK(b.l == 0);
  CHECK(b.m == 0);
  CHECK(b.to_string() == "p1 q0 u^0");

  MonogenicNF c = monogenic_normal_form("U");
  CHECK(c.kind == MonogenicNF::Kind::Negative);
  CHECK(c.m == 1);
}

TEST_CASE("invalid words") {
  CHECK_THROWS_AS(monogenic_normal_form(""), Error);
  CHECK_THROWS_AS(monogenic_normal_form("uxu"), Error);
}

TEST_CASE("random words evaluate to their normal form on the truncated shift of C^4") {
  Element u = shift(4);
  std::mt19937 rng(12345);
  for (int t = 0; t < 200; ++t) {
    std::string w;
    for (int i = 0; i < 8; ++i) w += (rng() & 1) ? 'u' : 'U';
    CAPTURE(w);
    MonogenicNF nf = monogenic_normal_form(w);
    CHECK(nf.evaluate(u).equals(evaluate_word(w, u)));
    CHECK(evaluate_word(nf.to_word(), u).equals(evaluate_word(w, u)));
    GluskinForm g = gluskin_form(nf);
    CHECK(g.in_bounds());
    CHECK(g.evaluate(u).equals(evaluate_word(w, u)));
  }
}

TEST_CASE("normal form multiplication matches concatenation") {
  Element u = shift(5);
  const std::vector<std::string> words = {"u", "U", "uU", "Uu", "uuU", "UUu", "uUUu", "UuuU"};
  for (const auto& a : words)
    for (const auto& b : words) {
      MonogenicNF p = monogenic_multiply(monogenic_normal_form(a), monogenic_normal_form(b));
      CHECK(p == monogenic_normal_form(a + b));
      CHECK(p.evaluate(u).equals(evaluate_word(a + b, u)));
    }
}

TEST_CASE("every closure element of the truncated shift is a normal form") {
  for (int n = 3; n <= 5; ++n) {
    Element u = shift(n);
    Closure c = generate_closure({u});
    REQUIRE(c.closed);
    std::size_t matched = 0;
    for (const auto& e : c.elements) {
      bool found = e.is_zero();
      for (int k = 0; k <= n && !found; ++k)
        for (int l = 0; l <= n && !found; ++l)
          for (int m = 0; m <= n && !found; ++m)
            for (auto kind : {MonogenicNF::Kind::Positive, MonogenicNF::Kind::Negative}) {
              MonogenicNF nf{k, l, m, kind};
              if (nf.evaluate(u).equals(e)) {
                found = true;
                break;
              }
            }
      if (found) ++matched;
    }
    CHECK(matched == c.size());
  }
}

TEST_CASE("powers") {
  Element u = shift(3);
  CHECK(power(u, 0).equals(Element::identity(Shape{3}, Backend::Exact)));
  CHECK(power(u, 3).is_zero());
  CHECK(power(u, 2).equals(u * u));
}
