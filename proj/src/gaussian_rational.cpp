#include "wstar/gaussian_rational.hpp"

#include <algorithm>

#include "wstar/error.hpp"

namespace wstar {

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorKind::InvalidInput, "bad rational '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussRat GaussRat::parse(const std::string& re, const std::string& im) {
  return GaussRat(parse_rational(re), parse_rational(im));
}

GaussRat GaussRat::inverse() const {
  mpq_class n = norm2();
  if (sgn(n) == 0) fail(ErrorKind::InvalidInput, "division by zero");
  return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = GaussRat(1);
  return m;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_) fail(ErrorKind::ShapeMismatch, "hstack row mismatch");
  QMatrix m(a.rows_, a.cols_ + b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (int c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
  }
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

QMatrix QMatrix::scaled(const GaussRat& s) const {
  QMatrix m = *this;
  for (auto& v : m.data_)
    if (!v.is_zero()) v *= s;
  return m;
}

GaussRat QMatrix::trace() const {
  GaussRat t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const GaussRat& v) { return v.is_zero(); });
}

Eigen::MatrixXcd QMatrix::to_complex() const {
  Eigen::MatrixXcd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).to_complex();
  return m;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::ShapeMismatch, "matrix sum");
  QMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    if (!b.data_[i].is_zero()) m.data_[i] += b.data_[i];
  return m;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::ShapeMismatch, "matrix difference");
  QMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    if (!b.data_[i].is_zero()) m.data_[i] -= b.data_[i];
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::ShapeMismatch, "matrix product");
  QMatrix m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const GaussRat& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const GaussRat& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        m(i, j) += aik * bkj;
      }
    }
  }
  return m;
}

QMatrix::Rref QMatrix::rref() const {
  Rref out{*this, {}};
  QMatrix& m = out.reduced;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int pivot = -1;
    for (int r = row; r < rows_; ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < cols_; ++c) std::swap(m(pivot, c), m(row, c));
    GaussRat inv = m(row, col).inverse();
    for (int c = col; c < cols_; ++c)
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      GaussRat f = m(r, col);
      for (int c = col; c < cols_; ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

int QMatrix::rank() const { return int(rref().pivots.size()); }

QMatrix QMatrix::select_columns(const std::vector<int>& idx) const {
  QMatrix m(rows_, int(idx.size()));
  for (int r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m(r, int(c)) = (*this)(r, idx[c]);
  return m;
}

QMatrix QMatrix::top_rows(int n) const {
  QMatrix m(n, cols_);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
  return m;
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) fail(ErrorKind::ShapeMismatch, "inverse of non-square matrix");
  Rref r = hstack(*this, identity(rows_)).rref();
  if (int(r.pivots.size()) < rows_ || r.pivots[rows_ - 1] >= rows_)
    fail(ErrorKind::InvalidInput, "singular matrix");
  QMatrix inv(rows_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) inv(i, j) = r.reduced(i, rows_ + j);
  return inv;
}

QMatrix QMatrix::range_projection() const {
  Rref r = rref();
  if (r.pivots.empty()) return QMatrix(rows_, rows_);
  QMatrix c = select_columns(r.pivots);
  QMatrix ca = c.adjoint();
  return c * (ca * c).inverse() * ca;
}

QMatrix QMatrix::pseudo_inverse() const {
  Rref r = rref();
  int k = int(r.pivots.size());
  if (k == 0) return QMatrix(cols_, rows_);
  QMatrix c = select_columns(r.pivots);
  QMatrix f = r.reduced.top_rows(k);
  QMatrix ca = c.adjoint();
  QMatrix fa = f.adjoint();
  return fa * (f * fa).inverse() * (ca * c).inverse() * ca;
}

bool QMatrix::is_hermitian_psd() const {
  if (rows_ != cols_ || *this != adjoint()) return false;
  QMatrix h = *this;
  std::vector<int> live(rows_);
  for (int i = 0; i < rows_; ++i) live[i] = i;
  while (!live.empty()) {
    int pick = -1;
    for (int i : live) {
      int s = sgn(h(i, i).re());
      if (s < 0) return false;
      if (s > 0 && pick < 0) pick = i;
    }
    if (pick < 0) {
      for (int i : live)
        for (int j : live)
          if (!h(i, j).is_zero()) return false;
      return true;
    }
    live.erase(std::find(live.begin(), live.end(), pick));
    GaussRat inv = h(pick, pick).inverse();
    for (int i : live) {
      if (h(i, pick).is_zero()) continue;
      GaussRat f = h(i, pick) * inv;
      for (int j : live) h(i, j) -= f * h(pick, j);
    }
  }
  return true;
}

}  // namespace wstar
