#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "wstar/gaussian_rational.hpp"
#include "wstar/tolerance.hpp"

namespace wstar {

using cplx = std::complex<double>;

/// Block sizes (n_1, ..., n_k) of a direct sum of full matrix algebras.
struct Shape {
  std::vector<int> dims;

  Shape() = default;
  Shape(std::initializer_list<int> d) : dims(d) {}
  explicit Shape(std::vector<int> d) : dims(std::move(d)) {}

  int blocks() const { return int(dims.size()); }
  /// Dimension of the underlying Hilbert space, sum of n_b.
  int hilbert_dim() const;
  /// Complex dimension of the algebra, sum of n_b^2.
  int algebra_dim() const;
  std::string to_string() const;
  friend bool operator==(const Shape& a, const Shape& b) { return a.dims == b.dims; }
  friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }
};

enum class Backend { Float, Exact };
const char* backend_name(Backend b);

/// An element of a finite direct sum of matrix algebras, stored block by block.
class Element {
 public:
  using FloatBlocks = std::vector<Eigen::MatrixXcd>;
  using ExactBlocks = std::vector<QMatrix>;

  Element() = default;
  explicit Element(FloatBlocks blocks);
  explicit Element(ExactBlocks blocks);

  static Element zero(const Shape& s, Backend b = Backend::Float);
  static Element identity(const Shape& s, Backend b = Backend::Float);
  /// Matrix unit e_{ij} inside block `block`.
  static Element matrix_unit(const Shape& s, int block, int i, int j, Backend b = Backend::Float);
  /// One block given, every other block zero.
  static Element embed(const Shape& s, int block, const Eigen::MatrixXcd& m);
  static Element embed(const Shape& s, int block, const QMatrix& m);

  const Shape& shape() const { return shape_; }
  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::Exact; }

  const FloatBlocks& float_blocks() const;
  const ExactBlocks& exact_blocks() const;
  FloatBlocks& float_blocks();
  ExactBlocks& exact_blocks();
  /// Float copy of an exact element; float elements are returned as is.
  Element to_float() const;
  /// Exact copy of a float element; every double is a dyadic rational.
  Element to_exact() const;

  Element adjoint() const;
  Element scaled(cplx s) const;
  Element scaled(const GaussRat& s) const;

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  Element operator-() const;

  /// Bit-exact equality for exact elements; entrywise within eps for float.
  bool equals(const Element& o, double eps = 0.0) const;
  /// Largest entrywise modulus of this - o (float view).
  double distance(const Element& o) const;
  double max_abs() const;
  bool is_zero(double eps = 0.0) const;

  /// Canonical string, used for hashing exact elements.
  std::string key() const;

 private:
  Shape shape_;
  Backend backend_ = Backend::Float;
  std::variant<FloatBlocks, ExactBlocks> blocks_;
};

void require_same_shape(const Element& a, const Element& b, const char* what);
void require_float(const Element& a, const char* what);

cplx trace(const Element& x);
GaussRat exact_trace(const Element& x);

/// Largest singular value over all blocks.
double operator_norm(const Element& x);
/// Sum of singular values over all blocks.
double trace_norm(const Element& x);

/// Per-block singular value decomposition with the global rank cutoff applied.
struct BlockSvd {
  Eigen::MatrixXcd u;  // n x r
  Eigen::VectorXd s;   // r
  Eigen::MatrixXcd v;  // n x r
};
std::vector<BlockSvd> truncated_svd(const Element& x, const Tolerance& tol = {});

/// Ranks of the blocks of x (rank of each x_b).
std::vector<int> block_ranks(const Element& x, const Tolerance& tol = {});

struct Polar {
  Element u;    // minimal partial isometry, u*u = s(|x|)
  Element abs;  // |x| = (x*x)^{1/2}
};
Polar polar_decompose(const Element& x, const Tolerance& tol = {});
Element sqrt_positive(const Element& x, const Tolerance& tol = {});
/// Orthonormal basis of the range of each block of a projection (eigenvalues above 1/2),
/// so roundoff left over in 1 - p never counts as rank.
std::vector<Eigen::MatrixXcd> projection_range_basis(const Element& p);
/// l(x): projection onto the range of x.
Element left_support(const Element& x, const Tolerance& tol = {});
/// r(x): projection onto the orthogonal complement of the kernel.
Element right_support(const Element& x, const Tolerance& tol = {});
/// Moore-Penrose inverse; coincides with |x|^{-1} u* computed on the support.
Element pseudo_inverse(const Element& x, const Tolerance& tol = {});
/// Inverse of an invertible element.
Element inverse(const Element& x);

bool is_hermitian(const Element& x, const Tolerance& tol = {});
bool is_projection(const Element& x, const Tolerance& tol = {});
bool is_partial_isometry(const Element& x, const Tolerance& tol = {});
bool is_positive(const Element& x, const Tolerance& tol = {});
bool is_unitary(const Element& x, const Tolerance& tol = {});
bool is_central(const Element& x, const Tolerance& tol = {});

}  // namespace wstar
