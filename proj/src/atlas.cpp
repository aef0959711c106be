#include "wstar/atlas.hpp"

#include <algorithm>

#include "wstar/error.hpp"
#include "wstar/groupoid.hpp"
#include "wstar/lattice.hpp"

namespace wstar {

namespace {

std::vector<Eigen::MatrixXcd> range_basis(const Element& proj, const Tolerance&) {
  return projection_range_basis(proj);
}

Element one_minus(const Element& p) { return Element::identity(p.shape()) - p; }

void require_corner(const Element& v, const Element& left, const Element& right, const char* what) {
  double scale = 1.0 + v.max_abs();
  if ((left * v * right).distance(v) > 1e-8 * scale)
    fail(ErrorKind::ChartDomain, std::string(what) + " is not in the required corner");
}

/// Real coordinates on the corner L M R given orthonormal bases of both ranges.
struct Corner {
  std::vector<Eigen::MatrixXcd> left, right;
  Shape shape;
  int real_dim = 0;

  Corner(const Element& l, const Element& r, const Tolerance& tol)
      : left(range_basis(l, tol)), right(range_basis(r, tol)), shape(l.shape()) {
    for (std::size_t b = 0; b < left.size(); ++b) real_dim += 2 * int(left[b].cols() * right[b].cols());
  }

  void pack(const Element& v, Eigen::VectorXd& out, int offset) const {
    const auto& blocks = v.float_blocks();
    for (std::size_t b = 0; b < left.size(); ++b) {
      Eigen::MatrixXcd c = left[b].adjoint() * blocks[b] * right[b];
      for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) {
          out(offset++) = c(i, j).real();
          out(offset++) = c(i, j).imag();
        }
    }
  }

  Element unpack(const Eigen::VectorXd& in, int offset) const {
    Element::FloatBlocks blocks;
    for (std::size_t b = 0; b < left.size(); ++b) {
      Eigen::MatrixXcd c(left[b].cols(), right[b].cols());
      for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) {
          c(i, j) = cplx(in(offset), in(offset + 1));
          offset += 2;
        }
      blocks.push_back(left[b] * c * right[b].adjoint());
    }
    return Element(std::move(blocks));
  }
};

}  // namespace

bool in_chart_domain(const Element& q, const Element& p, const Tolerance& tol) {
  require_same_shape(q, p, "chart domain");
  Projection qq = Projection::from_element(q.to_float(), tol);
  Projection c = complement(Projection::from_element(p.to_float(), tol));
  for (int r : block_ranks(meet(qq, c, tol), tol))
    if (r != 0) return false;
  std::vector<int> j = block_ranks(join(qq, c, tol), tol);
  for (int b = 0; b < q.shape().blocks(); ++b)
    if (j[b] != q.shape().dims[b]) return false;
  return true;
}

ChartPoint chart_point(const Element& p, const Element& q, const Tolerance& tol) {
  Element pf = p.to_float(), qf = q.to_float();
  if (!in_chart_domain(qf, pf, tol)) fail(ErrorKind::ChartDomain, "q is outside the chart domain of p");
  std::vector<Eigen::MatrixXcd> range = range_basis(qf, tol);
  std::vector<Eigen::MatrixXcd> kernel = range_basis(one_minus(pf), tol);
  Element::FloatBlocks e;
  for (int b = 0; b < pf.shape().blocks(); ++b) {
    const int n = pf.shape().dims[b];
    const int k = int(range[b].cols());
    if (k + kernel[b].cols() != n) fail(ErrorKind::ChartDomain, "ranks do not split the block");
    Eigen::MatrixXcd basis(n, n);
    basis << range[b], kernel[b];
    Eigen::MatrixXcd inv = basis.partialPivLu().inverse();
    e.push_back(range[b] * inv.topRows(k));
  }
  Element x = Element(std::move(e)) * pf;
  return {x, x - pf};
}

Element chart_phi(const Element& p, const Element& q, const Tolerance& tol) {
  return chart_point(p, q, tol).y;
}

Element section_sigma(const Element& p, const Element& q, const Tolerance& tol) {
  return chart_point(p, q, tol).x;
}

Element chart_phi_inv(const Element& p, const Element& y, const Tolerance& tol) {
  Element pf = p.to_float(), yf = y.to_float();
  require_same_shape(pf, yf, "chart inverse");
  require_corner(yf, one_minus(pf), pf, "chart coordinate");
  return left_support(pf + yf, tol);
}

Element lattice_transition(const Element& p, const Element& p2, const Element& y,
                           const Tolerance& tol) {
  Element pf = p.to_float(), p2f = p2.to_float(), yf = y.to_float();
  Element q = chart_phi_inv(pf, yf, tol);
  if (!in_chart_domain(q, p2f, tol)) fail(ErrorKind::OverlapViolation, "point is outside the second chart");
  Element np = one_minus(pf), np2 = one_minus(p2f);
  Element a = p2f * pf, b = np2 * pf, c = p2f * np, d = np2 * np;
  return (b + d * yf) * pseudo_inverse(a + c * yf, tol);
}

GroupoidCoords groupoid_chart_psi(const Element& pt, const Element& p, const Element& x,
                                  const Tolerance& tol) {
  Element xf = x.to_float(), ptf = pt.to_float(), pf = p.to_float();
  ChartPoint t = chart_point(ptf, groupoid_target(xf, tol), tol);
  ChartPoint s = chart_point(pf, groupoid_source(xf, tol), tol);
  return {t.y, pseudo_inverse(t.x, tol) * xf * s.x, s.y};
}

Element groupoid_chart_psi_inv(const Element& pt, const Element& p, const GroupoidCoords& c,
                               const Tolerance& tol) {
  Element ptf = pt.to_float(), pf = p.to_float();
  require_corner(c.target.to_float(), one_minus(ptf), ptf, "target coordinate");
  require_corner(c.source.to_float(), one_minus(pf), pf, "source coordinate");
  require_corner(c.core.to_float(), ptf, pf, "core coordinate");
  if (block_ranks(c.core, tol) != block_ranks(pf, tol) || block_ranks(ptf, tol) != block_ranks(pf, tol))
    fail(ErrorKind::ChartDomain, "core coordinate is not invertible between the bases");
  return (ptf + c.target) * c.core.to_float() * pseudo_inverse(pf + c.source, tol);
}

GroupoidCoords groupoid_transition(const Element& pt, const Element& p, const Element& pt2,
                                   const Element& p2, const GroupoidCoords& c,
                                   const Tolerance& tol) {
  Element t2 = lattice_transition(pt, pt2, c.target, tol);
  Element s2 = lattice_transition(p, p2, c.source, tol);
  Element core = pseudo_inverse(pt2.to_float() + t2, tol) * (pt.to_float() + c.target) *
                 c.core.to_float() * pseudo_inverse(p.to_float() + c.source, tol) *
                 (p2.to_float() + s2);
  return {t2, core, s2};
}

double coords_distance(const GroupoidCoords& a, const GroupoidCoords& b) {
  return std::max({a.target.distance(b.target), a.core.distance(b.core), a.source.distance(b.source)});
}

Element chart_metric_root(const Element& p, const Element& y, const Tolerance& tol) {
  Element pf = p.to_float(), yf = y.to_float();
  return sqrt_positive(pf + yf.adjoint() * yf, tol);
}

Element rescaled_core(const Element& pt, const Element& p, const GroupoidCoords& c,
                      const Tolerance& tol) {
  Element gt = chart_metric_root(pt, c.target, tol);
  Element g = chart_metric_root(p, c.source, tol);
  return gt * c.core.to_float() * pseudo_inverse(g, tol);
}

double rescaled_core_defect(const Element& pt, const Element& p, const Element& x,
                            const Tolerance& tol) {
  Element w = rescaled_core(pt, p, groupoid_chart_psi(pt, p, x, tol), tol);
  return w.distance(pseudo_inverse(w.adjoint(), tol));
}

InvolutionCheck involution_derivative_check(const Element& u, double h, const Tolerance& tol) {
  if (!(h >= 1e-12)) fail(ErrorKind::InvalidInput, "finite-difference step underflow");
  Element uf = u.to_float();
  Element pt = groupoid_target(uf, tol), p = groupoid_source(uf, tol);
  Corner ct(one_minus(pt), pt, tol), cz(pt, p, tol), cs(one_minus(p), p, tol);
  const int dim = ct.real_dim + cz.real_dim + cs.real_dim;
  auto pack = [&](const GroupoidCoords& c) {
    Eigen::VectorXd v(dim);
    ct.pack(c.target, v, 0);
    cz.pack(c.core, v, ct.real_dim);
    cs.pack(c.source, v, ct.real_dim + cz.real_dim);
    return v;
  };
  auto unpack = [&](const Eigen::VectorXd& v) {
    return GroupoidCoords{ct.unpack(v, 0), cz.unpack(v, ct.real_dim),
                          cs.unpack(v, ct.real_dim + cz.real_dim)};
  };
  auto j_chart = [&](const Eigen::VectorXd& v) {
    Element x = groupoid_chart_psi_inv(pt, p, unpack(v), tol);
    return pack(groupoid_chart_psi(pt, p, involution_J(x, tol), tol));
  };
  Eigen::VectorXd center = pack(groupoid_chart_psi(pt, p, uf, tol));
  Eigen::MatrixXd jac(dim, dim);
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd step = Eigen::VectorXd::Zero(dim);
    step(k) = h;
    jac.col(k) = (j_chart(center + step) - j_chart(center - step)) / (2.0 * h);
  }
  InvolutionCheck r;
  r.tangent_dim = dim;
  if (dim > 0) r.square_defect = (jac * jac - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  r.fixed_defect = involution_J(uf, tol).distance(uf);
  return r;
}

}  // namespace wstar
