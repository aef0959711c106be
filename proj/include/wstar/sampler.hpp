#pragma once

#include <cstdint>
#include <random>

#include "wstar/element.hpp"

namespace wstar {

/// Seeded source of random test elements. Same seed, same sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double normal();
  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive
  cplx complex_normal();

  Eigen::MatrixXcd gaussian_matrix(int rows, int cols);
  Element gaussian(const Shape& s);
  Element hermitian(const Shape& s);
  Element unitary(const Shape& s);
  Element invertible(const Shape& s);
  /// Projection with the requested per-block ranks.
  Element projection(const Shape& s, const std::vector<int>& ranks);
  /// Projection with uniformly drawn per-block ranks.
  Element projection(const Shape& s);
  /// Partial isometry u with u*u = p and uu* = q for random p, q of equal ranks.
  Element partial_isometry(const Shape& s);
  Element partial_isometry(const Shape& s, const std::vector<int>& ranks);
  /// Element of the given per-block rank.
  Element of_rank(const Shape& s, const std::vector<int>& ranks);
  /// Random element whose rank is drawn per block (possibly singular).
  Element random_rank(const Shape& s);
  /// Positive density of trace one with the given per-block ranks.
  Element density(const Shape& s, const std::vector<int>& ranks);
  Element faithful_density(const Shape& s);
  /// Exact element with Gaussian-integer entries in [-range, range].
  Element exact_integer(const Shape& s, int range);

  std::vector<int> random_ranks(const Shape& s, bool allow_zero = true);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace wstar
