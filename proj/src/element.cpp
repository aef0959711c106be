#include "wstar/element.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "wstar/error.hpp"

namespace wstar {

int Shape::hilbert_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

int Shape::algebra_dim() const {
  int n = 0;
  for (int d : dims) n += d * d;
  return n;
}

std::string Shape::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ")";
  return os.str();
}

const char* backend_name(Backend b) { return b == Backend::Float ? "f64" : "qq_i"; }

namespace {

void check_shape(const Shape& s) {
  if (s.dims.empty()) fail(ErrorKind::InvalidInput, "shape without blocks");
  for (int d : s.dims)
    if (d < 1) fail(ErrorKind::InvalidInput, "block size must be positive");
}

template <class M>
Shape shape_of(const std::vector<M>& blocks) {
  Shape s;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) fail(ErrorKind::ShapeMismatch, "blocks must be square");
    s.dims.push_back(int(b.rows()));
  }
  check_shape(s);
  return s;
}

void require_compatible(const Element& a, const Element& b, const char* what) {
  require_same_shape(a, b, what);
  if (a.backend() != b.backend())
    fail(ErrorKind::BackendMismatch, std::string(what) + ": mixed backends");
}

}  // namespace

Element::Element(FloatBlocks blocks)
    : shape_(shape_of(blocks)), backend_(Backend::Float), blocks_(std::move(blocks)) {}

Element::Element(ExactBlocks blocks)
    : shape_(shape_of(blocks)), backend_(Backend::Exact), blocks_(std::move(blocks)) {}

Element Element::zero(const Shape& s, Backend b) {
  check_shape(s);
  if (b == Backend::Float) {
    FloatBlocks blocks;
    for (int d : s.dims) blocks.push_back(Eigen::MatrixXcd::Zero(d, d));
    return Element(std::move(blocks));
  }
  ExactBlocks blocks;
  for (int d : s.dims) blocks.emplace_back(d, d);
  return Element(std::move(blocks));
}

Element Element::identity(const Shape& s, Backend b) {
  check_shape(s);
  if (b == Backend::Float) {
    FloatBlocks blocks;
    for (int d : s.dims) blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
    return Element(std::move(blocks));
  }
  ExactBlocks blocks;
  for (int d : s.dims) blocks.push_back(QMatrix::identity(d));
  return Element(std::move(blocks));
}

Element Element::matrix_unit(const Shape& s, int block, int i, int j, Backend b) {
  Element e = zero(s, b);
  if (block < 0 || block >= s.blocks() || i < 0 || j < 0 || i >= s.dims[block] ||
      j >= s.dims[block])
    fail(ErrorKind::InvalidInput, "matrix unit index out of range");
  if (b == Backend::Float)
    e.float_blocks()[block](i, j) = 1.0;
  else
    e.exact_blocks()[block](i, j) = GaussRat(1);
  return e;
}

Element Element::embed(const Shape& s, int block, const Eigen::MatrixXcd& m) {
  Element e = zero(s, Backend::Float);
  if (block < 0 || block >= s.blocks() || m.rows() != s.dims[block] || m.cols() != s.dims[block])
    fail(ErrorKind::ShapeMismatch, "embedded block does not fit");
  e.float_blocks()[block] = m;
  return e;
}

Element Element::embed(const Shape& s, int block, const QMatrix& m) {
  Element e = zero(s, Backend::Exact);
  if (block < 0 || block >= s.blocks() || m.rows() != s.dims[block] || m.cols() != s.dims[block])
    fail(ErrorKind::ShapeMismatch, "embedded block does not fit");
  e.exact_blocks()[block] = m;
  return e;
}

const Element::FloatBlocks& Element::float_blocks() const {
  if (backend_ != Backend::Float) fail(ErrorKind::BackendMismatch, "float blocks of exact element");
  return std::get<FloatBlocks>(blocks_);
}

const Element::ExactBlocks& Element::exact_blocks() const {
  if (backend_ != Backend::Exact) fail(ErrorKind::BackendMismatch, "exact blocks of float element");
  return std::get<ExactBlocks>(blocks_);
}

Element::FloatBlocks& Element::float_blocks() {
  if (backend_ != Backend::Float) fail(ErrorKind::BackendMismatch, "float blocks of exact element");
  return std::get<FloatBlocks>(blocks_);
}

Element::ExactBlocks& Element::exact_blocks() {
  if (backend_ != Backend::Exact) fail(ErrorKind::BackendMismatch, "exact blocks of float element");
  return std::get<ExactBlocks>(blocks_);
}

Element Element::to_float() const {
  if (backend_ == Backend::Float) return *this;
  FloatBlocks out;
  for (const auto& b : exact_blocks()) out.push_back(b.to_complex());
  return Element(std::move(out));
}

Element Element::to_exact() const {
  if (backend_ == Backend::Exact) return *this;
  ExactBlocks out;
  for (const auto& b : float_blocks()) {
    QMatrix m(int(b.rows()), int(b.cols()));
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) {
        if (!std::isfinite(b(i, j).real()) || !std::isfinite(b(i, j).imag()))
          fail(ErrorKind::InvalidInput, "non-finite entry has no exact value");
        m(i, j) = GaussRat(mpq_class(b(i, j).real()), mpq_class(b(i, j).imag()));
      }
    out.push_back(std::move(m));
  }
  return Element(std::move(out));
}

Element Element::adjoint() const {
  if (backend_ == Backend::Float) {
    FloatBlocks out;
    for (const auto& b : float_blocks()) out.push_back(b.adjoint());
    return Element(std::move(out));
  }
  ExactBlocks out;
  for (const auto& b : exact_blocks()) out.push_back(b.adjoint());
  return Element(std::move(out));
}

Element Element::scaled(cplx s) const {
  FloatBlocks out;
  Element f = to_float();
  for (const auto& b : f.float_blocks()) out.push_back(s * b);
  return Element(std::move(out));
}

Element Element::scaled(const GaussRat& s) const {
  ExactBlocks out;
  for (const auto& b : exact_blocks()) out.push_back(b.scaled(s));
  return Element(std::move(out));
}

Element operator+(const Element& a, const Element& b) {
  require_compatible(a, b, "sum");
  if (a.is_exact()) {
    Element::ExactBlocks out;
    for (int i = 0; i < a.shape().blocks(); ++i)
      out.push_back(a.exact_blocks()[i] + b.exact_blocks()[i]);
    return Element(std::move(out));
  }
  Element::FloatBlocks out;
  for (int i = 0; i < a.shape().blocks(); ++i)
    out.push_back(a.float_blocks()[i] + b.float_blocks()[i]);
  return Element(std::move(out));
}

Element operator-(const Element& a, const Element& b) {
  require_compatible(a, b, "difference");
  if (a.is_exact()) {
    Element::ExactBlocks out;
    for (int i = 0; i < a.shape().blocks(); ++i)
      out.push_back(a.exact_blocks()[i] - b.exact_blocks()[i]);
    return Element(std::move(out));
  }
  Element::FloatBlocks out;
  for (int i = 0; i < a.shape().blocks(); ++i)
    out.push_back(a.float_blocks()[i] - b.float_blocks()[i]);
  return Element(std::move(out));
}

Element operator*(const Element& a, const Element& b) {
  require_compatible(a, b, "product");
  if (a.is_exact()) {
    Element::ExactBlocks out;
    for (int i = 0; i < a.shape().blocks(); ++i)
      out.push_back(a.exact_blocks()[i] * b.exact_blocks()[i]);
    return Element(std::move(out));
  }
  Element::FloatBlocks out;
  for (int i = 0; i < a.shape().blocks(); ++i)
    out.push_back(a.float_blocks()[i] * b.float_blocks()[i]);
  return Element(std::move(out));
}

Element Element::operator-() const {
  if (is_exact()) return scaled(GaussRat(-1));
  return scaled(cplx(-1.0));
}

bool Element::equals(const Element& o, double eps) const {
  if (shape_ != o.shape_) return false;
  if (is_exact() && o.is_exact()) return exact_blocks() == o.exact_blocks();
  return distance(o) <= eps;
}

double Element::distance(const Element& o) const {
  require_same_shape(*this, o, "distance");
  const Element a = to_float();
  const Element b = o.to_float();
  double d = 0.0;
  for (int i = 0; i < shape_.blocks(); ++i)
    d = std::max(d, (a.float_blocks()[i] - b.float_blocks()[i]).cwiseAbs().maxCoeff());
  return d;
}

double Element::max_abs() const {
  const Element a = to_float();
  double d = 0.0;
  for (const auto& b : a.float_blocks()) d = std::max(d, b.cwiseAbs().maxCoeff());
  return d;
}

bool Element::is_zero(double eps) const {
  if (is_exact()) {
    for (const auto& b : exact_blocks())
      if (!b.is_zero()) return false;
    return true;
  }
  return max_abs() <= eps;
}

std::string Element::key() const {
  std::ostringstream os;
  os << backend_name(backend_) << shape_.to_string();
  if (is_exact()) {
    for (const auto& b : exact_blocks())
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) os << '|' << b(r, c).re() << ',' << b(r, c).im();
  } else {
    os.precision(17);
    for (const auto& b : float_blocks())
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) os << '|' << b(r, c).real() << ',' << b(r, c).imag();
  }
  return os.str();
}

void require_same_shape(const Element& a, const Element& b, const char* what) {
  if (a.shape() != b.shape())
    fail(ErrorKind::ShapeMismatch, std::string(what) + ": " + a.shape().to_string() + " vs " +
                                       b.shape().to_string());
}

void require_float(const Element& a, const char* what) {
  if (a.is_exact())
    fail(ErrorKind::UnsupportedBackend, std::string(what) + " is only available on the f64 backend");
}

cplx trace(const Element& x) {
  cplx t = 0.0;
  Element f = x.to_float();
  for (const auto& b : f.float_blocks()) t += b.trace();
  return t;
}

GaussRat exact_trace(const Element& x) {
  GaussRat t;
  for (const auto& b : x.exact_blocks()) t += b.trace();
  return t;
}

namespace {

std::vector<Eigen::JacobiSVD<Eigen::MatrixXcd>> block_svds(const Element& x) {
  std::vector<Eigen::JacobiSVD<Eigen::MatrixXcd>> out;
  for (const auto& b : x.float_blocks())
    out.emplace_back(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return out;
}

double global_threshold(const std::vector<Eigen::JacobiSVD<Eigen::MatrixXcd>>& svds,
                        const Tolerance& tol) {
  double smax = 0.0;
  for (const auto& s : svds)
    if (s.singularValues().size() > 0) smax = std::max(smax, s.singularValues()(0));
  return tol.eps_rank * smax;
}

int cutoff_rank(const Eigen::VectorXd& sv, double thr) {
  int r = 0;
  while (r < sv.size() && sv(r) > 0.0 && sv(r) > thr) ++r;
  return r;
}

}  // namespace

double operator_norm(const Element& x) {
  require_float(x, "operator_norm");
  double n = 0.0;
  for (const auto& s : block_svds(x)) n = std::max(n, s.singularValues()(0));
  return n;
}

double trace_norm(const Element& x) {
  require_float(x, "trace_norm");
  double n = 0.0;
  for (const auto& s : block_svds(x)) n += s.singularValues().sum();
  return n;
}

std::vector<BlockSvd> truncated_svd(const Element& x, const Tolerance& tol) {
  require_float(x, "truncated_svd");
  auto svds = block_svds(x);
  double thr = global_threshold(svds, tol);
  std::vector<BlockSvd> out;
  for (const auto& s : svds) {
    int r = cutoff_rank(s.singularValues(), thr);
    out.push_back({s.matrixU().leftCols(r), s.singularValues().head(r), s.matrixV().leftCols(r)});
  }
  return out;
}

std::vector<Eigen::MatrixXcd> projection_range_basis(const Element& p) {
  Element f = p.to_float();
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& b : f.float_blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (b + b.adjoint()));
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
    Eigen::MatrixXcd basis(b.rows(), int(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) basis.col(int(k)) = es.eigenvectors().col(keep[k]);
    out.push_back(std::move(basis));
  }
  return out;
}

std::vector<int> block_ranks(const Element& x, const Tolerance& tol) {
  std::vector<int> ranks;
  if (x.is_exact()) {
    for (const auto& b : x.exact_blocks()) ranks.push_back(b.rank());
    return ranks;
  }
  for (const auto& b : truncated_svd(x, tol)) ranks.push_back(int(b.s.size()));
  return ranks;
}

Polar polar_decompose(const Element& x, const Tolerance& tol) {
  require_float(x, "polar_decompose");
  Element::FloatBlocks us;
  Element::FloatBlocks abss;
  for (const auto& b : truncated_svd(x, tol)) {
    us.push_back(b.u * b.v.adjoint());
    abss.push_back(b.v * b.s.cast<cplx>().asDiagonal() * b.v.adjoint());
  }
  return {Element(std::move(us)), Element(std::move(abss))};
}

Element sqrt_positive(const Element& x, const Tolerance& tol) {
  require_float(x, "sqrt_positive");
  if (!is_positive(x, tol)) fail(ErrorKind::NotPositive, "sqrt of a non-positive element");
  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> solvers;
  double top = 0.0;
  for (const auto& b : x.float_blocks()) {
    solvers.emplace_back(Eigen::MatrixXcd(0.5 * (b + b.adjoint())));
    if (b.size()) top = std::max(top, solvers.back().eigenvalues().maxCoeff());
  }
  Element::FloatBlocks out;
  for (const auto& es : solvers) {
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) ev(i) = ev(i) > tol.eps_rank * top ? std::sqrt(ev(i)) : 0.0;
    out.push_back(es.eigenvectors() * ev.cast<cplx>().asDiagonal() *
                  es.eigenvectors().adjoint());
  }
  return Element(std::move(out));
}

Element left_support(const Element& x, const Tolerance& tol) {
  if (x.is_exact()) {
    Element::ExactBlocks out;
    for (const auto& b : x.exact_blocks()) out.push_back(b.range_projection());
    return Element(std::move(out));
  }
  Element::FloatBlocks out;
  for (const auto& b : truncated_svd(x, tol)) out.push_back(b.u * b.u.adjoint());
  return Element(std::move(out));
}

Element right_support(const Element& x, const Tolerance& tol) {
  if (x.is_exact()) return left_support(x.adjoint(), tol);
  Element::FloatBlocks out;
  for (const auto& b : truncated_svd(x, tol)) out.push_back(b.v * b.v.adjoint());
  return Element(std::move(out));
}

Element pseudo_inverse(const Element& x, const Tolerance& tol) {
  if (x.is_exact()) {
    Element::ExactBlocks out;
    for (const auto& b : x.exact_blocks()) out.push_back(b.pseudo_inverse());
    return Element(std::move(out));
  }
  Element::FloatBlocks out;
  for (const auto& b : truncated_svd(x, tol))
    out.push_back(b.v * b.s.cwiseInverse().cast<cplx>().asDiagonal() * b.u.adjoint());
  return Element(std::move(out));
}

Element inverse(const Element& x) {
  if (x.is_exact()) {
    Element::ExactBlocks out;
    for (const auto& b : x.exact_blocks()) out.push_back(b.inverse());
    return Element(std::move(out));
  }
  Element::FloatBlocks out;
  for (const auto& b : x.float_blocks()) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(b);
    if (!lu.isInvertible()) fail(ErrorKind::InvalidInput, "element is not invertible");
    out.push_back(lu.inverse());
  }
  return Element(std::move(out));
}

bool is_hermitian(const Element& x, const Tolerance& tol) {
  return x.equals(x.adjoint(), tol.eps_eq);
}

bool is_projection(const Element& x, const Tolerance& tol) {
  return is_hermitian(x, tol) && (x * x).equals(x, tol.eps_eq);
}

bool is_partial_isometry(const Element& x, const Tolerance& tol) {
  return (x * x.adjoint() * x).equals(x, tol.eps_eq);
}

bool is_positive(const Element& x, const Tolerance& tol) {
  if (!is_hermitian(x, tol)) return false;
  if (x.is_exact()) {
    for (const auto& b : x.exact_blocks())
      if (!b.is_hermitian_psd()) return false;
    return true;
  }
  for (const auto& b : x.float_blocks()) {
    Eigen::MatrixXcd h = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.eps_eq) return false;
  }
  return true;
}

bool is_unitary(const Element& x, const Tolerance& tol) {
  Element one = Element::identity(x.shape(), x.backend());
  return (x.adjoint() * x).equals(one, tol.eps_eq) && (x * x.adjoint()).equals(one, tol.eps_eq);
}

bool is_central(const Element& x, const Tolerance& tol) {
  const Shape& s = x.shape();
  for (int b = 0; b < s.blocks(); ++b)
    for (int i = 0; i < s.dims[b]; ++i)
      for (int j = 0; j < s.dims[b]; ++j) {
        Element e = Element::matrix_unit(s, b, i, j, x.backend());
        if (!(e * x).equals(x * e, tol.eps_eq)) return false;
      }
  return true;
}

}  // namespace wstar
