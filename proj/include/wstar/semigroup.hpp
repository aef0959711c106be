#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wstar/element.hpp"
#include "wstar/report.hpp"

namespace wstar {

/// Finite *-semigroup of exact elements with its multiplication table.
struct Closure {
  std::vector<Element> elements;        // canonical (lexicographic) order
  std::vector<std::vector<int>> table;  // table[i][j] = index of elements[i]*elements[j]; empty if !closed
  std::vector<int> star;                // index of the adjoint; -1 if not present
  int zero_index = -1;
  bool closed = false;

  std::size_t size() const { return elements.size(); }
  int index_of(const Element& x) const;
  nlohmann::json to_json() const;
};

inline constexpr std::size_t kDefaultClosureCap = 20000;

/// Breadth-first closure under products and adjoints (exact backend only).
/// Stops with closed == false once the cap is exceeded.
Closure generate_closure(const std::vector<Element>& generators,
                         std::size_t cap = kDefaultClosureCap);

struct SemigroupCheck {
  bool holds = false;
  std::optional<std::pair<int, int>> witness;  // indices into the closure
  std::string reason;
};

/// s s* s = s for every s, and idempotents commute pairwise.
SemigroupCheck check_inverse_semigroup(const Closure& c);
/// Inverse semigroup whose idempotents are central in it.
SemigroupCheck check_clifford(const Closure& c);

/// (i) E is a commutative family of projections closed under products;
/// (ii) u p u* lies in E or is 0 for u in U, p in E.
SemigroupCheck check_UE_conditions(const std::vector<Element>& E, const std::vector<Element>& U,
                                   const Tolerance& tol = {});

/// Sampled check that products of partial isometries stay partial isometries in an
/// abelian algebra; for non-abelian shapes, an explicit counterexample pair.
/// `holds` is true when the side of the dichotomy matching the shape is confirmed.
struct DichotomyReport {
  bool abelian = false;
  bool holds = false;
  std::size_t sampled = 0;
  std::optional<std::pair<Element, Element>> counterexample;
  nlohmann::json to_json() const;
};
DichotomyReport abelian_dichotomy_check(const Shape& s, std::size_t samples, std::uint64_t seed);

/// Orthogonal projections p_i with partial isometries u_ij, u_ij* u_ij = p_j, u_ij u_ij* = p_i.
struct MatrixUnitSystem {
  std::vector<Element> p;
  std::map<std::pair<int, int>, Element> u;  // (i, j) -> u_ij; diagonal defaults to p_i

  const Element& unit(int i, int j) const;
  /// p_i and every u_ij, deduplicated.
  std::vector<Element> generators() const;
};

/// Validates orthogonality, the support conditions and u_ij u_jk = u_ik.
/// Throws NotProjection / NotPartialIsometry / InconsistentRepresentatives.
MatrixUnitSystem matrix_unit_system(std::vector<Element> p,
                                    std::map<std::pair<int, int>, Element> u);
/// Standard matrix units of one block, p_i = e_ii.
MatrixUnitSystem standard_matrix_units(const Shape& s, int block);

using PartialBijection = std::map<int, int>;

/// u_phi = sum over the domain of u_{phi(i), i}.
Element partial_bijection_lift(const PartialBijection& phi, const MatrixUnitSystem& sys);
/// Reads phi off an element of the generated semigroup: phi(i) = j iff p_j u p_i != 0.
PartialBijection partial_bijection_of(const Element& u, const MatrixUnitSystem& sys);
PartialBijection compose(const PartialBijection& psi, const PartialBijection& phi);

struct PowerCheck {
  bool holds = false;
  int failing_power = 0;
};
/// u^k is a partial isometry for k = 1..bound (bound <= 0 means dim + 2).
PowerCheck is_power_partial_isometry(const Element& u, int bound = 0, const Tolerance& tol = {});

struct GenerationCheck {
  bool holds = false;
  int failing_power = 0;
  std::size_t words_checked = 0;
  std::size_t words_failed = 0;
  nlohmann::json to_json() const;
};
/// [p, w^k p w*^k] = 0 for k = 1..bound; if so, sampled words in p and w are checked to be
/// partial isometries.
GenerationCheck projection_unitary_generation_check(const Element& p, const Element& w, int bound,
                                                    const Tolerance& tol = {});

/// Rank certificate that no s with s*s = 1 and ss* < 1 exists on a finite shape.
struct InfiniteObstruction {
  bool possible = false;
  std::vector<int> unit_ranks;
  std::size_t sampled_isometries = 0;
  double max_range_defect = 0.0;  // max ||ss* - 1|| over sampled s with s*s = 1
  std::size_t proper_projections_checked = 0;
  std::size_t proper_projections_equivalent_to_unit = 0;
  std::string certificate;
  nlohmann::json to_json() const;
};
InfiniteObstruction properly_infinite_obstruction(const Shape& s, std::size_t samples,
                                                  std::uint64_t seed);

}  // namespace wstar
