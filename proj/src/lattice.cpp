#include "wstar/lattice.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "wstar/error.hpp"

namespace wstar {

Projection Projection::from_element(const Element& x, const Tolerance& tol) {
  if (!is_projection(x, tol)) fail(ErrorKind::NotProjection, "element is not a projection");
  return Projection(x);
}

Projection Projection::trusted(Element x) { return Projection(std::move(x)); }

Projection Projection::zero(const Shape& s, Backend b) { return Projection(Element::zero(s, b)); }

Projection Projection::identity(const Shape& s, Backend b) {
  return Projection(Element::identity(s, b));
}

bool leq(const Projection& p, const Projection& q, const Tolerance& tol) {
  return (p.element() * q.element()).equals(p.element(), tol.eps_eq);
}

Projection complement(const Projection& p) {
  return Projection::trusted(Element::identity(p.shape(), p.element().backend()) - p.element());
}

namespace {

struct StackedSvd {
  std::vector<Eigen::JacobiSVD<Eigen::MatrixXcd>> svds;
  std::vector<int> ranks;
};

// SVD of [a_b b_b] per block with the rank cutoff taken over all blocks. Projections have
// unit scale, so the cutoff never drops below eps_rank.
StackedSvd stacked_svd(const Element& a, const Element& b, const Tolerance& tol) {
  StackedSvd out;
  double smax = 0.0;
  for (int i = 0; i < a.shape().blocks(); ++i) {
    const auto& ab = a.float_blocks()[i];
    Eigen::MatrixXcd m(ab.rows(), 2 * ab.cols());
    m << ab, b.float_blocks()[i];
    out.svds.emplace_back(m, Eigen::ComputeFullU);
    smax = std::max(smax, out.svds.back().singularValues()(0));
  }
  smax = std::max(smax, 1.0);
  for (const auto& s : out.svds) {
    int r = 0;
    const auto& sv = s.singularValues();
    while (r < sv.size() && sv(r) > 0.0 && sv(r) > tol.eps_rank * smax) ++r;
    out.ranks.push_back(r);
  }
  return out;
}

void require_pair(const Projection& p, const Projection& q, const char* what) {
  require_same_shape(p.element(), q.element(), what);
  if (p.element().backend() != q.element().backend())
    fail(ErrorKind::BackendMismatch, std::string(what) + ": mixed backends");
}

}  // namespace

Projection join(const Projection& p, const Projection& q, const Tolerance& tol) {
  require_pair(p, q, "join");
  if (p.element().is_exact()) {
    Element::ExactBlocks out;
    for (int i = 0; i < p.shape().blocks(); ++i)
      out.push_back(
          QMatrix::hstack(p.element().exact_blocks()[i], q.element().exact_blocks()[i])
              .range_projection());
    return Projection::trusted(Element(std::move(out)));
  }
  StackedSvd st = stacked_svd(p.element(), q.element(), tol);
  Element::FloatBlocks out;
  for (std::size_t i = 0; i < st.svds.size(); ++i) {
    Eigen::MatrixXcd u = st.svds[i].matrixU().leftCols(st.ranks[i]);
    out.push_back(u * u.adjoint());
  }
  return Projection::trusted(Element(std::move(out)));
}

Projection meet(const Projection& p, const Projection& q, const Tolerance& tol) {
  require_pair(p, q, "meet");
  if (p.element().is_exact()) return complement(join(complement(p), complement(q), tol));
  // Orthogonal complement of range(1-p) + range(1-q), read off the full SVD basis.
  StackedSvd st = stacked_svd(complement(p).element(), complement(q).element(), tol);
  Element::FloatBlocks out;
  for (std::size_t i = 0; i < st.svds.size(); ++i) {
    const auto& u = st.svds[i].matrixU();
    Eigen::MatrixXcd c = u.rightCols(u.cols() - st.ranks[i]);
    out.push_back(c * c.adjoint());
  }
  return Projection::trusted(Element(std::move(out)));
}

RankVector orbit_invariant(const Element& x, const Tolerance& tol) { return block_ranks(x, tol); }

bool mvn_equivalent_ranks(const Projection& p, const Projection& q, const Tolerance& tol) {
  require_pair(p, q, "mvn_equivalent");
  if (p.element().is_exact()) return orbit_invariant(p, tol) == orbit_invariant(q, tol);
  auto a = projection_range_basis(p.element()), b = projection_range_basis(q.element());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].cols() != b[i].cols()) return false;
  return true;
}

namespace {

Element float_witness(const Projection& p, const Projection& q) {
  auto sp = projection_range_basis(p.element());
  auto sq = projection_range_basis(q.element());
  Element::FloatBlocks out;
  for (std::size_t i = 0; i < sp.size(); ++i) out.push_back(sq[i] * sp[i].adjoint());
  return Element(std::move(out));
}

// Diagonal 0/1 projections: pair the occupied coordinates in order.
std::optional<Element> coordinate_witness(const Projection& p, const Projection& q) {
  Element::ExactBlocks out;
  for (int b = 0; b < p.shape().blocks(); ++b) {
    const QMatrix& pb = p.element().exact_blocks()[b];
    const QMatrix& qb = q.element().exact_blocks()[b];
    int n = pb.rows();
    std::vector<int> pi;
    std::vector<int> qi;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (r != c && (!pb(r, c).is_zero() || !qb(r, c).is_zero())) return std::nullopt;
        if (r == c) {
          if (pb(r, r) == GaussRat(1)) pi.push_back(r);
          else if (!pb(r, r).is_zero()) return std::nullopt;
          if (qb(r, r) == GaussRat(1)) qi.push_back(r);
          else if (!qb(r, r).is_zero()) return std::nullopt;
        }
      }
    QMatrix w(n, n);
    for (std::size_t k = 0; k < pi.size(); ++k) w(qi[k], pi[k]) = GaussRat(1);
    out.push_back(std::move(w));
  }
  return Element(std::move(out));
}

// Best rational approximation with bounded denominator, via continued fractions.
std::optional<mpq_class> small_rational(double v, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    long ai = long(a);
    long h2 = ai * h1 + h0;
    long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(v - double(h1) / double(k1)) < 1e-12) return mpq_class(h1, k1);
    double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(v - double(h1) / double(k1)) < 1e-12) return mpq_class(h1, k1);
  return std::nullopt;
}

std::optional<Element> rounded_witness(const Element& w) {
  Element::ExactBlocks out;
  for (const auto& b : w.float_blocks()) {
    QMatrix m(int(b.rows()), int(b.cols()));
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) {
        auto re = small_rational(b(r, c).real(), 10000);
        auto im = small_rational(b(r, c).imag(), 10000);
        if (!re || !im) return std::nullopt;
        m(r, c) = GaussRat(*re, *im);
      }
    out.push_back(std::move(m));
  }
  return Element(std::move(out));
}

}  // namespace

std::optional<Element> mvn_equivalent(const Projection& p, const Projection& q,
                                      const Tolerance& tol) {
  if (!mvn_equivalent_ranks(p, q, tol)) return std::nullopt;
  if (!p.element().is_exact()) return float_witness(p, q);
  auto check = [&](const Element& w) {
    return (w.adjoint() * w).equals(p.element()) && (w * w.adjoint()).equals(q.element());
  };
  if (auto w = coordinate_witness(p, q); w && check(*w)) return w;
  if (auto w = rounded_witness(float_witness(p, q)); w && check(*w)) return w;
  fail(ErrorKind::UnsupportedBackend,
       "equivalent, but no Gaussian-rational witness found; use the f64 backend");
}

const char* to_string(OrbitOrder o) {
  switch (o) {
    case OrbitOrder::Less: return "less";
    case OrbitOrder::Equal: return "equal";
    case OrbitOrder::Greater: return "greater";
    case OrbitOrder::Incomparable: return "incomparable";
  }
  return "incomparable";
}

OrbitOrder orbit_order(const RankVector& a, const RankVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::ShapeMismatch, "rank vectors of different length");
  bool le = true;
  bool ge = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    le = le && a[i] <= b[i];
    ge = ge && a[i] >= b[i];
  }
  if (le && ge) return OrbitOrder::Equal;
  if (le) return OrbitOrder::Less;
  if (ge) return OrbitOrder::Greater;
  return OrbitOrder::Incomparable;
}

}  // namespace wstar
