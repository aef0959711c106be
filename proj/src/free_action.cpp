#include "wstar/free_action.hpp"

#include <algorithm>

#include "wstar/groupoid.hpp"

namespace wstar {

namespace {

double smallest_nonzero_singular_value(const Element& x, const Tolerance& tol) {
  double m = 0.0;
  bool any = false;
  for (const auto& b : truncated_svd(x, tol))
    if (b.s.size() > 0) {
      m = any ? std::min(m, b.s.minCoeff()) : b.s.minCoeff();
      any = true;
    }
  return m;
}

}  // namespace

Report free_action_check(const Shape& s, std::size_t attempts, Sampler& smp, const Tolerance& tol,
                         double threshold) {
  Report r("free-action", threshold);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < attempts; ++i) {
    Element x = (i % 10 == 9) ? Element::zero(s) : smp.random_rank(s);
    Element l = left_support(x, tol);
    Element u1 = smp.unitary(s) * l;
    Element u2 = (i % 7 == 3) ? u1 : smp.unitary(s) * l;

    r.record("admissible", i, (u1.adjoint() * u1).distance(l) + (u2.adjoint() * u2).distance(l));

    double du = x.is_zero() ? 0.0 : operator_norm(u1 - u2);
    double dx = operator_norm(u1 * x - u2 * x);
    double smin = smallest_nonzero_singular_value(x, tol);
    if (du > 1e-6 && dx <= 1e-12 * std::max(1.0, operator_norm(x))) ++violations;
    r.record("separation", i, std::max(0.0, smin * du - dx));

    Polar px = polar_decompose(x, tol);
    r.record("own-representative", i, (px.u.adjoint() * x).distance(px.abs));
    Element y = u1 * x;
    Polar py = polar_decompose(y, tol);
    r.record("orbit-representative", i, (py.u.adjoint() * y).distance(px.abs));
  }
  r.extra["attempts"] = attempts;
  r.extra["violations"] = violations;
  if (violations > 0) r.fail_law("distinct-arrows-collide", violations);
  return r;
}

}  // namespace wstar
