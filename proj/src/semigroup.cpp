#include "wstar/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "wstar/error.hpp"
#include "wstar/json_io.hpp"
#include "wstar/lattice.hpp"
#include "wstar/sampler.hpp"

namespace wstar {

int Closure::index_of(const Element& x) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].equals(x)) return int(i);
  return -1;
}

json Closure::to_json() const {
  json elems = json::array();
  for (const auto& e : elements) elems.push_back(element_to_json(e));
  return {{"size", elements.size()}, {"closed", closed},  {"zero_index", zero_index},
          {"elements", elems},       {"table", table},    {"star", star}};
}

Closure generate_closure(const std::vector<Element>& generators, std::size_t cap) {
  if (generators.empty()) fail(ErrorKind::InvalidInput, "closure of an empty generator set");
  for (const auto& g : generators) {
    if (!g.is_exact()) fail(ErrorKind::UnsupportedBackend, "closure runs on the exact backend");
    require_same_shape(g, generators.front(), "closure");
  }
  std::unordered_map<std::string, int> seen;
  std::vector<Element> found;
  bool overflow = false;
  auto add = [&](Element e) {
    if (overflow) return;
    std::string k = e.key();
    if (seen.count(k)) return;
    if (found.size() >= cap) {
      overflow = true;
      return;
    }
    seen.emplace(std::move(k), int(found.size()));
    found.push_back(std::move(e));
  };
  for (const auto& g : generators) add(g);
  for (std::size_t i = 0; i < found.size() && !overflow; ++i) {
    const Element a = found[i];
    add(a.adjoint());
    for (std::size_t j = 0; j <= i && !overflow; ++j) {
      const Element b = found[j];
      add(a * b);
      add(b * a);
    }
  }

  Closure c;
  c.closed = !overflow;
  std::vector<std::string> keys;
  for (const auto& e : found) keys.push_back(e.key());
  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  std::unordered_map<std::string, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    c.elements.push_back(found[order[i]]);
    pos.emplace(keys[order[i]], int(i));
  }
  auto lookup = [&](const Element& e) {
    auto it = pos.find(e.key());
    return it == pos.end() ? -1 : it->second;
  };
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    c.star.push_back(lookup(c.elements[i].adjoint()));
    if (c.elements[i].is_zero()) c.zero_index = int(i);
  }
  if (c.closed) {
    c.table.assign(c.size(), std::vector<int>(c.size(), -1));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j)
        c.table[i][j] = lookup(c.elements[i] * c.elements[j]);
  }
  return c;
}

namespace {

Element product(const Closure& c, int i, int j) {
  if (c.closed) return c.elements[c.table[i][j]];
  return c.elements[i] * c.elements[j];
}

std::vector<int> idempotents(const Closure& c) {
  std::vector<int> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (product(c, int(i), int(i)).equals(c.elements[i])) out.push_back(int(i));
  return out;
}

}  // namespace

SemigroupCheck check_inverse_semigroup(const Closure& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Element& s = c.elements[i];
    if (!(s * s.adjoint() * s).equals(s))
      return {false, std::make_pair(int(i), c.star[i]), "s s* s != s"};
  }
  std::vector<int> idem = idempotents(c);
  for (std::size_t a = 0; a < idem.size(); ++a)
    for (std::size_t b = a + 1; b < idem.size(); ++b)
      if (!product(c, idem[a], idem[b]).equals(product(c, idem[b], idem[a])))
        return {false, std::make_pair(idem[a], idem[b]), "idempotents do not commute"};
  if (!c.closed) return {false, std::nullopt, "closure incomplete"};
  return {true, std::nullopt, ""};
}

SemigroupCheck check_clifford(const Closure& c) {
  SemigroupCheck inv = check_inverse_semigroup(c);
  if (!inv.holds) return inv;
  for (int e : idempotents(c))
    for (std::size_t s = 0; s < c.size(); ++s)
      if (!product(c, e, int(s)).equals(product(c, int(s), e)))
        return {false, std::make_pair(e, int(s)), "idempotent is not central"};
  return {true, std::nullopt, ""};
}

SemigroupCheck check_UE_conditions(const std::vector<Element>& E, const std::vector<Element>& U,
                                   const Tolerance& tol) {
  auto in_E = [&](const Element& x) {
    return std::any_of(E.begin(), E.end(), [&](const Element& e) { return e.equals(x, tol.eps_eq); });
  };
  for (std::size_t i = 0; i < E.size(); ++i)
    if (!is_projection(E[i], tol))
      return {false, std::make_pair(int(i), int(i)), "E contains a non-projection"};
  for (std::size_t i = 0; i < U.size(); ++i)
    if (!is_partial_isometry(U[i], tol))
      return {false, std::make_pair(int(i), int(i)), "U contains a non-partial-isometry"};
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = 0; j < E.size(); ++j) {
      Element pq = E[i] * E[j];
      if (!pq.equals(E[j] * E[i], tol.eps_eq))
        return {false, std::make_pair(int(i), int(j)), "projections in E do not commute"};
      if (!in_E(pq)) return {false, std::make_pair(int(i), int(j)), "E is not closed under products"};
    }
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = 0; j < E.size(); ++j) {
      Element x = U[i] * E[j] * U[i].adjoint();
      if (!x.is_zero(tol.eps_eq) && !in_E(x))
        return {false, std::make_pair(int(i), int(j)), "u p u* is neither 0 nor in E"};
    }
  return {true, std::nullopt, ""};
}

json DichotomyReport::to_json() const {
  json j = {{"abelian", abelian}, {"holds", holds}, {"sampled", sampled}};
  if (counterexample)
    j["counterexample"] = {element_to_json(counterexample->first),
                           element_to_json(counterexample->second)};
  return j;
}

DichotomyReport abelian_dichotomy_check(const Shape& s, std::size_t samples, std::uint64_t seed) {
  DichotomyReport r;
  r.abelian = std::all_of(s.dims.begin(), s.dims.end(), [](int d) { return d == 1; });
  if (r.abelian) {
    // Unimodular Gaussian rationals (and 0) are the partial isometries of C.
    const std::vector<GaussRat> values = {
        GaussRat(0), GaussRat(1), GaussRat(-1), GaussRat::i(), -GaussRat::i(),
        GaussRat(mpq_class(3, 5), mpq_class(4, 5)), GaussRat(mpq_class(-5, 13), mpq_class(12, 13)),
        GaussRat(mpq_class(8, 17), mpq_class(-15, 17))};
    Sampler smp(seed);
    auto draw = [&] {
      Element::ExactBlocks blocks;
      for (int b = 0; b < s.blocks(); ++b) {
        QMatrix m(1, 1);
        m(0, 0) = values[smp.integer(0, int(values.size()) - 1)];
        blocks.push_back(std::move(m));
      }
      return Element(std::move(blocks));
    };
    r.holds = true;
    for (std::size_t k = 0; k < samples; ++k) {
      Element a = draw();
      Element b = draw();
      Element ab = a * b;
      ++r.sampled;
      if (!(ab * ab.adjoint() * ab).equals(ab)) {
        r.holds = false;
        r.counterexample = std::make_pair(a, b);
        break;
      }
    }
    return r;
  }
  // Non-abelian: diag(1, 0) and the projection onto (1, 1)/sqrt 2 in the first block with n >= 2.
  int block = 0;
  while (s.dims[block] < 2) ++block;
  int n = s.dims[block];
  QMatrix p(n, n);
  p(0, 0) = GaussRat(1);
  QMatrix q(n, n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q(i, j) = GaussRat(mpq_class(1, 2), 0);
  Element pe = Element::embed(s, block, p);
  Element qe = Element::embed(s, block, q);
  Element pq = pe * qe;
  r.sampled = 1;
  r.holds = !(pq * pq.adjoint() * pq).equals(pq);
  r.counterexample = std::make_pair(pe, qe);
  return r;
}

const Element& MatrixUnitSystem::unit(int i, int j) const {
  auto it = u.find({i, j});
  if (it != u.end()) return it->second;
  if (i == j && i >= 0 && i < int(p.size())) return p[i];
  fail(ErrorKind::InvalidInput,
       "no representative u_" + std::to_string(i) + std::to_string(j) + " in the system");
}

std::vector<Element> MatrixUnitSystem::generators() const {
  std::vector<Element> g = p;
  for (const auto& [ij, e] : u) {
    bool dup = std::any_of(g.begin(), g.end(), [&](const Element& x) { return x.equals(e); });
    if (!dup) g.push_back(e);
  }
  return g;
}

MatrixUnitSystem matrix_unit_system(std::vector<Element> p,
                                    std::map<std::pair<int, int>, Element> u) {
  const Tolerance tol;
  const int n = int(p.size());
  for (int i = 0; i < n; ++i) {
    if (!is_projection(p[i], tol)) fail(ErrorKind::NotProjection, "p_" + std::to_string(i));
    for (int j = 0; j < i; ++j)
      if (!(p[i] * p[j]).is_zero(tol.eps_eq))
        fail(ErrorKind::InvalidInput, "p_i are not mutually orthogonal");
  }
  for (const auto& [ij, e] : u) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::InvalidInput, "u index out of range");
    if (!(e.adjoint() * e).equals(p[j], tol.eps_eq) || !(e * e.adjoint()).equals(p[i], tol.eps_eq))
      fail(ErrorKind::NotPartialIsometry, "u_ij* u_ij != p_j or u_ij u_ij* != p_i");
  }
  MatrixUnitSystem sys{std::move(p), std::move(u)};
  for (const auto& [ij, a] : sys.u)
    for (const auto& [jk, b] : sys.u) {
      if (ij.second != jk.first) continue;
      auto it = sys.u.find({ij.first, jk.second});
      if (it != sys.u.end() && !(a * b).equals(it->second, tol.eps_eq))
        fail(ErrorKind::InconsistentRepresentatives, "u_ij u_jk != u_ik");
    }
  return sys;
}

MatrixUnitSystem standard_matrix_units(const Shape& s, int block) {
  int n = s.dims.at(block);
  std::vector<Element> p;
  std::map<std::pair<int, int>, Element> u;
  for (int i = 0; i < n; ++i) p.push_back(Element::matrix_unit(s, block, i, i, Backend::Exact));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) u.emplace(std::make_pair(i, j), Element::matrix_unit(s, block, i, j, Backend::Exact));
  return matrix_unit_system(std::move(p), std::move(u));
}

Element partial_bijection_lift(const PartialBijection& phi, const MatrixUnitSystem& sys) {
  if (sys.p.empty()) fail(ErrorKind::InvalidInput, "empty matrix unit system");
  Element out = Element::zero(sys.p.front().shape(), sys.p.front().backend());
  std::vector<int> image;
  for (const auto& [i, j] : phi) {
    if (std::find(image.begin(), image.end(), j) != image.end())
      fail(ErrorKind::InvalidInput, "partial map is not injective");
    image.push_back(j);
    out = out + sys.unit(j, i);
  }
  return out;
}

PartialBijection partial_bijection_of(const Element& u, const MatrixUnitSystem& sys) {
  const Tolerance tol;
  PartialBijection phi;
  for (int i = 0; i < int(sys.p.size()); ++i) {
    Element x = u * sys.p[i];
    if (x.is_zero(tol.eps_eq)) continue;
    int found = -1;
    for (int j = 0; j < int(sys.p.size()); ++j)
      if (!(sys.p[j] * x).is_zero(tol.eps_eq)) {
        if (found >= 0) fail(ErrorKind::InvalidInput, "element mixes several targets");
        found = j;
      }
    if (found < 0) fail(ErrorKind::InvalidInput, "element leaves the span of the p_i");
    phi[i] = found;
  }
  return phi;
}

PartialBijection compose(const PartialBijection& psi, const PartialBijection& phi) {
  PartialBijection out;
  for (const auto& [i, j] : phi) {
    auto it = psi.find(j);
    if (it != psi.end()) out[i] = it->second;
  }
  return out;
}

PowerCheck is_power_partial_isometry(const Element& u, int bound, const Tolerance& tol) {
  if (bound <= 0) bound = u.shape().hilbert_dim() + 2;
  Element power = u;
  for (int k = 1; k <= bound; ++k) {
    if (!is_partial_isometry(power, tol)) return {false, k};
    power = power * u;
  }
  return {true, 0};
}

json GenerationCheck::to_json() const {
  return {{"holds", holds},
          {"failing_power", failing_power},
          {"words_checked", words_checked},
          {"words_failed", words_failed}};
}

GenerationCheck projection_unitary_generation_check(const Element& p, const Element& w, int bound,
                                                    const Tolerance& tol) {
  if (!is_projection(p, tol)) fail(ErrorKind::NotProjection, "p");
  if (!is_unitary(w, tol)) fail(ErrorKind::InvalidInput, "w is not unitary");
  if (bound <= 0) bound = p.shape().hilbert_dim() + 2;
  GenerationCheck r;
  std::vector<Element> pos{Element::identity(p.shape(), p.backend())};
  for (int k = 1; k <= bound; ++k) pos.push_back(pos.back() * w);
  auto wpow = [&](int k) { return k >= 0 ? pos[k] : pos[-k].adjoint(); };
  for (int k = 1; k <= bound; ++k) {
    Element q = pos[k] * p * pos[k].adjoint();
    if (!(p * q).equals(q * p, tol.eps_eq)) {
      r.failing_power = k;
      break;
    }
  }
  auto check_word = [&](const Element& x) {
    ++r.words_checked;
    if (!is_partial_isometry(x, tol)) ++r.words_failed;
  };
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b) check_word(p * wpow(a) * p * wpow(b) * p);
  int small = std::min(bound, 2);
  for (int a = -small; a <= small; ++a)
    for (int b = -small; b <= small; ++b)
      for (int c = -small; c <= small; ++c)
        check_word(wpow(c) * p * wpow(a) * p * wpow(b) * p);
  r.holds = r.failing_power == 0 && r.words_failed == 0;
  return r;
}

json InfiniteObstruction::to_json() const {
  return {{"possible", possible},
          {"unit_ranks", unit_ranks},
          {"sampled_isometries", sampled_isometries},
          {"max_range_defect", max_range_defect},
          {"proper_projections_checked", proper_projections_checked},
          {"proper_projections_equivalent_to_unit", proper_projections_equivalent_to_unit},
          {"certificate", certificate}};
}

InfiniteObstruction properly_infinite_obstruction(const Shape& s, std::size_t samples,
                                                  std::uint64_t seed) {
  InfiniteObstruction r;
  r.unit_ranks = s.dims;
  std::ostringstream cert;
  cert << "s*s = 1 forces rank(ss*) = rank(s*s) = " << s.to_string()
       << " block by block; a projection of full rank in every block is 1, so ss* < 1 is "
          "impossible";
  r.certificate = cert.str();
  Sampler smp(seed);
  Projection one = Projection::identity(s);
  for (std::size_t k = 0; k < samples; ++k) {
    Element iso = polar_decompose(smp.gaussian(s)).u;
    ++r.sampled_isometries;
    r.max_range_defect = std::max(r.max_range_defect,
                                  (iso * iso.adjoint()).distance(Element::identity(s)));
    std::vector<int> ranks = smp.random_ranks(s);
    int b = smp.integer(0, s.blocks() - 1);
    ranks[b] = std::min(ranks[b], s.dims[b] - 1);
    Projection p = Projection::trusted(smp.projection(s, ranks));
    ++r.proper_projections_checked;
    if (mvn_equivalent_ranks(p, one)) ++r.proper_projections_equivalent_to_unit;
  }
  r.possible = r.proper_projections_equivalent_to_unit > 0;
  return r;
}

}  // namespace wstar
