#include "wstar/sampler.hpp"

#include <Eigen/QR>

#include "wstar/error.hpp"

namespace wstar {

double Sampler::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

cplx Sampler::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

Eigen::MatrixXcd Sampler::gaussian_matrix(int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = complex_normal();
  return m;
}

Element Sampler::gaussian(const Shape& s) {
  Element::FloatBlocks out;
  for (int d : s.dims) out.push_back(gaussian_matrix(d, d));
  return Element(std::move(out));
}

Element Sampler::hermitian(const Shape& s) {
  Element g = gaussian(s);
  return (g + g.adjoint()).scaled(cplx(0.5));
}

namespace {

Eigen::MatrixXcd haar_unitary(Sampler& smp, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(smp.gaussian_matrix(n, n));
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

Element Sampler::unitary(const Shape& s) {
  Element::FloatBlocks out;
  for (int d : s.dims) out.push_back(haar_unitary(*this, d));
  return Element(std::move(out));
}

Element Sampler::invertible(const Shape& s) {
  Element::FloatBlocks out;
  for (int d : s.dims) {
    Eigen::MatrixXcd m = gaussian_matrix(d, d);
    m += 2.0 * std::sqrt(double(d)) * Eigen::MatrixXcd::Identity(d, d);
    out.push_back(m);
  }
  return Element(std::move(out));
}

std::vector<int> Sampler::random_ranks(const Shape& s, bool allow_zero) {
  std::vector<int> r;
  for (int d : s.dims) r.push_back(integer(allow_zero ? 0 : 1, d));
  return r;
}

Element Sampler::projection(const Shape& s, const std::vector<int>& ranks) {
  if (int(ranks.size()) != s.blocks()) fail(ErrorKind::ShapeMismatch, "rank vector length");
  Element::FloatBlocks out;
  for (int b = 0; b < s.blocks(); ++b) {
    Eigen::MatrixXcd v = haar_unitary(*this, s.dims[b]).leftCols(ranks[b]);
    out.push_back(v * v.adjoint());
  }
  return Element(std::move(out));
}

Element Sampler::projection(const Shape& s) { return projection(s, random_ranks(s)); }

Element Sampler::partial_isometry(const Shape& s, const std::vector<int>& ranks) {
  if (int(ranks.size()) != s.blocks()) fail(ErrorKind::ShapeMismatch, "rank vector length");
  Element::FloatBlocks out;
  for (int b = 0; b < s.blocks(); ++b) {
    Eigen::MatrixXcd a = haar_unitary(*this, s.dims[b]).leftCols(ranks[b]);
    Eigen::MatrixXcd c = haar_unitary(*this, s.dims[b]).leftCols(ranks[b]);
    out.push_back(a * c.adjoint());
  }
  return Element(std::move(out));
}

Element Sampler::partial_isometry(const Shape& s) { return partial_isometry(s, random_ranks(s)); }

Element Sampler::of_rank(const Shape& s, const std::vector<int>& ranks) {
  if (int(ranks.size()) != s.blocks()) fail(ErrorKind::ShapeMismatch, "rank vector length");
  Element::FloatBlocks out;
  for (int b = 0; b < s.blocks(); ++b) {
    int n = s.dims[b];
    out.push_back(gaussian_matrix(n, ranks[b]) * gaussian_matrix(ranks[b], n));
  }
  return Element(std::move(out));
}

Element Sampler::random_rank(const Shape& s) { return of_rank(s, random_ranks(s)); }

Element Sampler::density(const Shape& s, const std::vector<int>& ranks) {
  Element::FloatBlocks out;
  double total = 0.0;
  for (int b = 0; b < s.blocks(); ++b) {
    Eigen::MatrixXcd g = gaussian_matrix(s.dims[b], ranks[b]);
    Eigen::MatrixXcd rho = g * g.adjoint();
    total += rho.trace().real();
    out.push_back(rho);
  }
  if (total <= 0) fail(ErrorKind::InvalidInput, "density of rank zero");
  for (auto& b : out) b /= total;
  return Element(std::move(out));
}

Element Sampler::faithful_density(const Shape& s) { return density(s, s.dims); }

Element Sampler::exact_integer(const Shape& s, int range) {
  Element::ExactBlocks out;
  for (int d : s.dims) {
    QMatrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = GaussRat(integer(-range, range), integer(-range, range));
    out.push_back(std::move(m));
  }
  return Element(std::move(out));
}

}  // namespace wstar
