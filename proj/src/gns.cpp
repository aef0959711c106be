#include "wstar/gns.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "wstar/error.hpp"
#include "wstar/json_io.hpp"

namespace wstar {

cplx GnsSpace::inner(const Element& x, const Element& y) const {
  return trace(state.density * x.adjoint() * y);
}

Eigen::VectorXcd GnsSpace::coordinates(const Element& xi) const {
  Eigen::VectorXcd c(dim());
  for (int a = 0; a < dim(); ++a) c(a) = inner(basis[a], xi);
  return c;
}

Element GnsSpace::vector(const Eigen::VectorXcd& c) const {
  Element out = Element::zero(support.shape());
  for (int a = 0; a < dim(); ++a) out = out + basis[a].scaled(c(a));
  return out;
}

GnsSpace gns_space(const Functional& w, const Tolerance& tol) {
  Functional fw{w.density.to_float()};
  if (!is_positive_functional(fw, tol)) fail(ErrorKind::NotPositive, "GNS needs a positive functional");
  GnsSpace h{fw, state_support(fw, tol), {}};
  const Shape& s = fw.density.shape();
  std::vector<Element> units;
  for (int b = 0; b < s.blocks(); ++b)
    for (int i = 0; i < s.dims[b]; ++i)
      for (int j = 0; j < s.dims[b]; ++j) units.push_back(Element::matrix_unit(s, b, i, j) * h.support);
  const int n = int(units.size());
  Eigen::MatrixXcd gram(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) gram(k, l) = h.inner(units[k], units[l]);
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double top = ev.size() ? ev.maxCoeff() : 0.0;
  for (int a = n - 1; a >= 0; --a) {
    if (!(ev(a) > tol.eps_rank * top) || ev(a) <= 0.0) continue;
    Element e = Element::zero(s);
    for (int k = 0; k < n; ++k)
      if (std::abs(es.eigenvectors()(k, a)) > 0.0) e = e + units[k].scaled(es.eigenvectors()(k, a));
    h.basis.push_back(e.scaled(cplx(1.0 / std::sqrt(ev(a)))));
  }
  return h;
}

Eigen::MatrixXcd gns_rep(const Element& x, const GnsSpace& h) {
  Element xf = x.to_float();
  Eigen::MatrixXcd r(h.dim(), h.dim());
  for (int b = 0; b < h.dim(); ++b) r.col(b) = h.coordinates(xf * h.basis[b]);
  return r;
}

Element FiberMap::apply(const Element& xi) const {
  return target.vector(matrix * source.coordinates(xi));
}

FiberMap fiber_map_between(const Element& u, const GnsSpace& source, const GnsSpace& target,
                           const Tolerance&) {
  Element uf = u.to_float();
  if (support_gap(uf.adjoint() * uf, source.support) > kComposabilityTol)
    fail(ErrorKind::MomentMismatch, "u*u differs from the support of the state");
  Element moved = uf * source.state.density * uf.adjoint();
  if (moved.distance(target.state.density) > kComposabilityTol)
    fail(ErrorKind::MomentMismatch, "target state is not I_star(u, source)");
  FiberMap f{source, target, uf, Eigen::MatrixXcd(target.dim(), source.dim())};
  Element ua = uf.adjoint();
  for (int b = 0; b < source.dim(); ++b) f.matrix.col(b) = target.coordinates(source.basis[b] * ua);
  return f;
}

FiberMap groupoid_rep_phi(const Element& u, const Functional& w, const Tolerance& tol) {
  GnsSpace src = gns_space(w, tol);
  Element uf = u.to_float();
  GnsSpace tgt = gns_space(Functional{uf * src.state.density * uf.adjoint()}, tol);
  return fiber_map_between(uf, src, tgt, tol);
}

Eigen::MatrixXcd DirectSum::rep(const Element& x) const {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < fibers.size(); ++i)
    r.block(offsets[i], offsets[i], fibers[i].dim(), fibers[i].dim()) = gns_rep(x, fibers[i]);
  return r;
}

int DirectSum::find(const Functional& w, double eps) const {
  for (std::size_t i = 0; i < fibers.size(); ++i)
    if (fibers[i].state.density.distance(w.density.to_float()) <= eps) return int(i);
  return -1;
}

int DirectSum::rep_rank() const {
  if (fibers.empty()) return 0;
  const Shape& s = fibers.front().support.shape();
  std::vector<Eigen::VectorXcd> cols;
  for (int b = 0; b < s.blocks(); ++b)
    for (int i = 0; i < s.dims[b]; ++i)
      for (int j = 0; j < s.dims[b]; ++j) {
        Eigen::MatrixXcd r = rep(Element::matrix_unit(s, b, i, j));
        cols.push_back(Eigen::Map<Eigen::VectorXcd>(r.data(), r.size()));
      }
  Eigen::MatrixXcd m(cols.front().size(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) m.col(k) = cols[k];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  int rank = 0;
  const auto& sv = svd.singularValues();
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-9 * sv(0)) ++rank;
  return rank;
}

bool DirectSum::faithful() const {
  return !fibers.empty() && rep_rank() == fibers.front().support.shape().algebra_dim();
}

bool DirectSum::supports_cover_unit(const Tolerance& tol) const {
  if (fibers.empty()) return false;
  Projection j = Projection::zero(fibers.front().support.shape());
  for (const auto& f : fibers) j = join(j, Projection::trusted(f.support), tol);
  return j.element().equals(Element::identity(j.shape()), tol.eps_eq * 100);
}

DirectSum direct_sum(const std::vector<Functional>& states, const Tolerance& tol) {
  DirectSum d;
  for (const auto& w : states) {
    if (!d.fibers.empty()) require_same_shape(w.density, d.fibers.front().state.density, "direct sum");
    d.offsets.push_back(d.dim);
    d.fibers.push_back(gns_space(w, tol));
    d.dim += d.fibers.back().dim();
  }
  return d;
}

Eigen::MatrixXcd extend_fiber_map(const DirectSum& sum, int source, int target, const Element& u,
                                  const Tolerance& tol) {
  FiberMap f = fiber_map_between(u, sum.fibers.at(source), sum.fibers.at(target), tol);
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(sum.dim, sum.dim);
  op.block(sum.offsets[target], sum.offsets[source], f.target.dim(), f.source.dim()) = f.matrix;
  return op;
}

double commutant_defect(const Eigen::MatrixXcd& op, const DirectSum& sum) {
  if (sum.fibers.empty()) return 0.0;
  const Shape& s = sum.fibers.front().support.shape();
  double d = 0.0;
  for (int b = 0; b < s.blocks(); ++b)
    for (int i = 0; i < s.dims[b]; ++i)
      for (int j = 0; j < s.dims[b]; ++j) {
        Eigen::MatrixXcd g = sum.rep(Element::matrix_unit(s, b, i, j));
        if (op.size()) d = std::max(d, (op * g - g * op).cwiseAbs().maxCoeff());
      }
  return d;
}

json BisectionRep::to_json() const {
  return {{"operator", matrix_to_json(op)},
          {"isometry_defect", isometry_defect},
          {"commutant_defect", commutant_defect}};
}

BisectionRep bisection_rep(const LocalBisection& sigma, const DirectSum& sum, const Tolerance& tol) {
  if (sigma.points.size() != sigma.arrows.size())
    fail(ErrorKind::InvalidInput, "bisection needs one arrow per point");
  BisectionRep r{Eigen::MatrixXcd::Zero(sum.dim, sum.dim)};
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(sum.dim, sum.dim);
  std::vector<int> targets;
  for (std::size_t k = 0; k < sigma.points.size(); ++k) {
    int src = sigma.points[k];
    if (src < 0 || src >= int(sum.fibers.size())) fail(ErrorKind::InvalidInput, "point out of range");
    if (std::count(sigma.points.begin(), sigma.points.end(), src) > 1)
      fail(ErrorKind::InvalidInput, "point listed twice");
    Element u = sigma.arrows[k].to_float();
    if (support_gap(u.adjoint() * u, sum.fibers[src].support) > kComposabilityTol)
      fail(ErrorKind::MomentMismatch, "u*u differs from the support of the state");
    int tgt = sum.find(Functional{u * sum.fibers[src].state.density * u.adjoint()},
                       kComposabilityTol);
    if (tgt < 0) fail(ErrorKind::InvalidInput, "target state is not in the family");
    if (std::find(targets.begin(), targets.end(), tgt) != targets.end())
      fail(ErrorKind::NotInjective, "two points share a target");
    targets.push_back(tgt);
    r.op += extend_fiber_map(sum, src, tgt, u, tol);
    int d = sum.fibers[src].dim();
    expected.block(sum.offsets[src], sum.offsets[src], d, d) = Eigen::MatrixXcd::Identity(d, d);
  }
  if (sum.dim > 0) {
    r.isometry_defect = (r.op.adjoint() * r.op - expected).cwiseAbs().maxCoeff();
    r.commutant_defect = commutant_defect(r.op, sum);
  }
  return r;
}

}  // namespace wstar
