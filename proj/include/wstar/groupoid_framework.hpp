#pragma once

#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "wstar/error.hpp"
#include "wstar/report.hpp"

namespace wstar {

/// Structure maps of a groupoid with arrows A over base points B.
template <class A, class B>
struct Groupoid {
  std::function<B(const A&)> source;
  std::function<B(const A&)> target;
  /// compose(x, y) = xy, defined when source(x) == target(y).
  std::function<A(const A&, const A&)> compose;
  std::function<A(const A&)> inverse;
  std::function<A(const B&)> identity;
  std::function<double(const A&, const A&)> arrow_distance;
  std::function<double(const B&, const B&)> base_distance;
};

template <class A>
struct GroupoidSamples {
  std::vector<A> arrows;
  std::vector<std::pair<A, A>> pairs;         // source(first) == target(second)
  std::vector<std::tuple<A, A, A>> triples;   // consecutive pairs composable
};

namespace detail {

template <class F>
void guarded(Report& r, const std::string& law, std::size_t i, F&& f) {
  try {
    r.record(law, i, f());
  } catch (const Error&) {
    r.fail_law(law, i);
  }
}

}  // namespace detail

/// Checks units, inverses, source/target of products and associativity on the samples.
template <class A, class B>
Report verify_groupoid_axioms(const Groupoid<A, B>& g, const GroupoidSamples<A>& s,
                              double threshold, std::string name = "groupoid-axioms") {
  Report r(std::move(name), threshold);
  for (std::size_t i = 0; i < s.arrows.size(); ++i) {
    const A& x = s.arrows[i];
    detail::guarded(r, "left-unit", i, [&] {
      return g.arrow_distance(g.compose(g.identity(g.target(x)), x), x);
    });
    detail::guarded(r, "right-unit", i, [&] {
      return g.arrow_distance(g.compose(x, g.identity(g.source(x))), x);
    });
    detail::guarded(r, "unit-source", i, [&] {
      B b = g.source(x);
      return g.base_distance(g.source(g.identity(b)), b) +
             g.base_distance(g.target(g.identity(b)), b);
    });
    detail::guarded(r, "inverse-source", i, [&] {
      return g.base_distance(g.source(g.inverse(x)), g.target(x));
    });
    detail::guarded(r, "inverse-target", i, [&] {
      return g.base_distance(g.target(g.inverse(x)), g.source(x));
    });
    detail::guarded(r, "inverse-left", i, [&] {
      return g.arrow_distance(g.compose(g.inverse(x), x), g.identity(g.source(x)));
    });
    detail::guarded(r, "inverse-right", i, [&] {
      return g.arrow_distance(g.compose(x, g.inverse(x)), g.identity(g.target(x)));
    });
    detail::guarded(r, "inverse-involutive", i,
                    [&] { return g.arrow_distance(g.inverse(g.inverse(x)), x); });
  }
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& [x, y] = s.pairs[i];
    detail::guarded(r, "product-source", i, [&] {
      return g.base_distance(g.source(g.compose(x, y)), g.source(y));
    });
    detail::guarded(r, "product-target", i, [&] {
      return g.base_distance(g.target(g.compose(x, y)), g.target(x));
    });
  }
  for (std::size_t i = 0; i < s.triples.size(); ++i) {
    const auto& [x, y, z] = s.triples[i];
    detail::guarded(r, "associativity", i, [&] {
      return g.arrow_distance(g.compose(g.compose(x, y), z), g.compose(x, g.compose(y, z)));
    });
  }
  return r;
}

/// Left action of a groupoid on points P with moment map P -> B.
template <class A, class B, class P>
struct GroupoidAction {
  std::function<P(const A&, const P&)> act;
  std::function<B(const P&)> moment;
  std::function<double(const P&, const P&)> point_distance;
};

template <class A, class P>
struct ActionSamples {
  std::vector<P> points;
  std::vector<std::pair<A, P>> acting;              // source(g) == moment(r)
  std::vector<std::tuple<A, A, P>> chained;         // source(g) == target(h), source(h) == moment(r)
};

/// Action laws: unit acts trivially, moment(g.r) = target(g), (gh).r = g.(h.r).
template <class A, class B, class P>
Report check_action_laws(const Groupoid<A, B>& g, const GroupoidAction<A, B, P>& act,
                         const ActionSamples<A, P>& s, double threshold) {
  Report r("action-laws", threshold);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const P& p = s.points[i];
    detail::guarded(r, "unit-acts-trivially", i, [&] {
      return act.point_distance(act.act(g.identity(act.moment(p)), p), p);
    });
  }
  for (std::size_t i = 0; i < s.acting.size(); ++i) {
    const auto& [x, p] = s.acting[i];
    detail::guarded(r, "moment-equivariance", i, [&] {
      return g.base_distance(act.moment(act.act(x, p)), g.target(x));
    });
  }
  for (std::size_t i = 0; i < s.chained.size(); ++i) {
    const auto& [x, y, p] = s.chained[i];
    detail::guarded(r, "compatibility", i, [&] {
      return act.point_distance(act.act(g.compose(x, y), p), act.act(x, act.act(y, p)));
    });
  }
  return r;
}

template <class A, class P>
struct ActionArrow {
  A g;
  P r;
};

/// Thrown when sampled action laws fail while building an action groupoid.
class ActionLawError : public Error {
 public:
  explicit ActionLawError(Report r)
      : Error(ErrorKind::AxiomViolation, "action laws fail on samples"), report_(std::move(r)) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

/// Action groupoid: arrows (g, r) with source r and target g.r.
template <class A, class B, class P>
Groupoid<ActionArrow<A, P>, P> action_groupoid(const Groupoid<A, B>& g,
                                               const GroupoidAction<A, B, P>& act) {
  using AA = ActionArrow<A, P>;
  Groupoid<AA, P> out;
  out.source = [](const AA& a) { return a.r; };
  out.target = [g, act](const AA& a) { return act.act(a.g, a.r); };
  out.compose = [g, act](const AA& a, const AA& b) {
    return AA{g.compose(a.g, b.g), b.r};
  };
  out.inverse = [g, act](const AA& a) { return AA{g.inverse(a.g), act.act(a.g, a.r)}; };
  out.identity = [g, act](const P& p) { return AA{g.identity(act.moment(p)), p}; };
  out.arrow_distance = [g, act](const AA& a, const AA& b) {
    return g.arrow_distance(a.g, b.g) + act.point_distance(a.r, b.r);
  };
  out.base_distance = act.point_distance;
  return out;
}

/// Validates the action laws on the samples first; throws ActionLawError on failure.
template <class A, class B, class P>
Groupoid<ActionArrow<A, P>, P> make_action_groupoid(const Groupoid<A, B>& g,
                                                    const GroupoidAction<A, B, P>& act,
                                                    const ActionSamples<A, P>& samples,
                                                    double threshold) {
  Report r = check_action_laws(g, act, samples, threshold);
  if (!r.pass()) throw ActionLawError(std::move(r));
  return action_groupoid(g, act);
}

/// Pair groupoid on X: source (x, y) = x, target = y, (y, z)(x, y) = (x, z).
template <class X>
Groupoid<std::pair<X, X>, X> make_pair_groupoid(std::function<double(const X&, const X&)> dist) {
  using PA = std::pair<X, X>;
  Groupoid<PA, X> out;
  out.source = [](const PA& a) { return a.first; };
  out.target = [](const PA& a) { return a.second; };
  out.compose = [](const PA& a, const PA& b) { return PA{b.first, a.second}; };
  out.inverse = [](const PA& a) { return PA{a.second, a.first}; };
  out.identity = [](const X& x) { return PA{x, x}; };
  out.arrow_distance = [dist](const PA& a, const PA& b) {
    return dist(a.first, b.first) + dist(a.second, b.second);
  };
  out.base_distance = dist;
  return out;
}

}  // namespace wstar
