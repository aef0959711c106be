#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace wstar {

/// Exact complex number re + i*im with rational parts.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Parses "p/q" or "p" strings for each part.
  static GaussRat parse(const std::string& re, const std::string& im);
  static GaussRat i() { return GaussRat(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  GaussRat inverse() const;
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inverse(); }
  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// "p/q" form (always with a denominator) used by the JSON format.
std::string rational_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

/// Dense row-major matrix over the Gaussian rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix hstack(const QMatrix& a, const QMatrix& b);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GaussRat& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const GaussRat& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  QMatrix adjoint() const;
  QMatrix scaled(const GaussRat& s) const;
  GaussRat trace() const;
  bool is_zero() const;
  Eigen::MatrixXcd to_complex() const;

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  /// Skips zero entries, so products of sparse 0/±1 matrices stay cheap.
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

  /// Reduced row echelon form and pivot columns.
  struct Rref;
  Rref rref() const;
  int rank() const;
  QMatrix select_columns(const std::vector<int>& idx) const;
  QMatrix top_rows(int n) const;
  /// Throws InvalidInput when singular.
  QMatrix inverse() const;
  /// Orthogonal projection onto the column space, A (A*A)^{-1} A*.
  QMatrix range_projection() const;
  /// Moore-Penrose inverse through a full-rank factorization.
  QMatrix pseudo_inverse() const;
  /// Positive semidefinite test for a Hermitian matrix, by symmetric elimination.
  bool is_hermitian_psd() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GaussRat> data_;
};

struct QMatrix::Rref {
  QMatrix reduced;
  std::vector<int> pivots;
};

}  // namespace wstar
