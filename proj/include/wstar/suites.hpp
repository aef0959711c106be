#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wstar/element.hpp"
#include "wstar/report.hpp"

namespace wstar {

/// Unit, inverse, source/target and associativity laws of the groupoid of partially
/// invertible elements on random arrows of random rank.
Report groupoid_axioms_suite(const Shape& s, std::size_t arrows, std::uint64_t seed);
/// x = u|x|, u*u = s(|x|), |x*| = u|x|u*, support identities and ranks.
Report polar_suite(const Shape& s, std::size_t samples, std::uint64_t seed);
/// Inner action of partial isometries on pMp and on predual densities.
Report inner_action_suite(const Shape& s, std::size_t samples, std::uint64_t seed);
Report free_action_suite(const Shape& s, std::size_t attempts, std::uint64_t seed);
/// Fiber maps over random states: isometry, functoriality, inverse, reconstruction of the
/// arrow and commutation with the direct-sum representation.
Report gns_suite(const Shape& s, std::size_t states, std::uint64_t seed);
/// Matrix-unit closure of every block of s, inverse-semigroup check and abelian dichotomy.
Report semigroup_suite(const Shape& s, std::uint64_t seed);
/// Truncated shifts on C^n for each n: closure elements against evaluated normal forms.
Report monogenic_suite(const std::vector<int>& sizes);
Report cuntz_suite(int max_n, int depth);
Report car_suite(int max_n, int max_weight);
Report atlas_suite(const Shape& s, std::size_t points, std::size_t isometries, std::uint64_t seed);
Report poisson_suite(const Shape& s, std::size_t samples, std::uint64_t seed);
Report infinite_obstruction_suite(const std::vector<Shape>& shapes, std::size_t samples,
                                  std::uint64_t seed);

std::vector<std::string> suite_names();
/// Runs a suite by name. Recognized options: shape, shapes, samples, seed, n, depth,
/// max_len, sizes, isometries. Throws InvalidInput for unknown names.
Report run_suite(const std::string& name, const nlohmann::json& options);

}  // namespace wstar
