#pragma once

#include <optional>
#include <vector>

#include "wstar/element.hpp"

namespace wstar {

using RankVector = std::vector<int>;

/// An element verified to satisfy p = p* = p^2.
class Projection {
 public:
  Projection() = default;
  /// Throws NotProjection if x is not a projection within tolerance.
  static Projection from_element(const Element& x, const Tolerance& tol = {});
  /// Wraps x without checking; use only for values that are projections by construction.
  static Projection trusted(Element x);
  static Projection zero(const Shape& s, Backend b = Backend::Float);
  static Projection identity(const Shape& s, Backend b = Backend::Float);

  const Element& element() const { return e_; }
  const Shape& shape() const { return e_.shape(); }
  operator const Element&() const { return e_; }  // NOLINT(google-explicit-constructor)

 private:
  explicit Projection(Element e) : e_(std::move(e)) {}
  Element e_;
};

bool leq(const Projection& p, const Projection& q, const Tolerance& tol = {});
Projection complement(const Projection& p);
Projection join(const Projection& p, const Projection& q, const Tolerance& tol = {});
Projection meet(const Projection& p, const Projection& q, const Tolerance& tol = {});

/// Per-block ranks; the complete invariant of the unitary orbit of a projection
/// and of the orbit of any element under left and right unitary multiplication.
RankVector orbit_invariant(const Element& x, const Tolerance& tol = {});

/// Murray-von Neumann equivalence. Returns a partial isometry u with u*u = p
/// and uu* = q, or nothing if the rank vectors differ.
std::optional<Element> mvn_equivalent(const Projection& p, const Projection& q,
                                      const Tolerance& tol = {});
bool mvn_equivalent_ranks(const Projection& p, const Projection& q, const Tolerance& tol = {});

enum class OrbitOrder { Less, Equal, Greater, Incomparable };
const char* to_string(OrbitOrder o);
/// Componentwise comparison of rank vectors (subequivalence of supports).
OrbitOrder orbit_order(const RankVector& a, const RankVector& b);

}  // namespace wstar
