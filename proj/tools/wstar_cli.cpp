#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "wstar/atlas.hpp"
#include "wstar/car.hpp"
#include "wstar/cuntz.hpp"
#include "wstar/error.hpp"
#include "wstar/gns.hpp"
#include "wstar/groupoid.hpp"
#include "wstar/json_io.hpp"
#include "wstar/lattice.hpp"
#include "wstar/monogenic.hpp"
#include "wstar/poisson.hpp"
#include "wstar/semigroup.hpp"
#include "wstar/suites.hpp"

using namespace wstar;

namespace {

constexpr int kExitVerificationFailed = 2;
constexpr int kExitInputError = 1;

struct Globals {
  std::string backend;
  std::uint64_t seed = 1;
  double eps_eq = 0.0;
  double eps_rank = 0.0;

  Tolerance tolerance() const {
    Tolerance t = Tolerance::from_env();
    if (eps_eq > 0) t.eps_eq = eps_eq;
    if (eps_rank > 0) t.eps_rank = eps_rank;
    return t;
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, "malformed JSON in '" + path + "': " + e.what());
  }
}

Element load_element(const std::string& path, const Globals& g) {
  Element x = element_from_json(read_json(path));
  if (g.backend == "exact") return x.to_exact();
  if (g.backend == "f64") return x.to_float();
  return x;
}

/// A file holding one element or an array of elements.
std::vector<Element> load_elements(const std::vector<std::string>& paths, const Globals& g) {
  std::vector<Element> out;
  for (const auto& p : paths) {
    json j = read_json(p);
    std::vector<json> items = j.is_array() ? j.get<std::vector<json>>() : std::vector<json>{j};
    for (const auto& item : items) {
      Element x = element_from_json(item);
      out.push_back(g.backend == "exact" ? x.to_exact() : g.backend == "f64" ? x.to_float() : x);
    }
  }
  return out;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

TangentElement load_tangent(const std::string& path) {
  json j = read_json(path);
  return {element_from_json(j.at("base")), element_from_json(j.at("vec"))};
}

CotangentElement load_cotangent(const std::string& path) {
  json j = read_json(path);
  return {element_from_json(j.at("base")), element_from_json(j.at("codensity"))};
}

json tangent_json(const TangentElement& a) {
  return {{"base", element_to_json(a.base)}, {"vec", element_to_json(a.vec)}};
}

json cotangent_json(const CotangentElement& a) {
  return {{"base", element_to_json(a.base)}, {"codensity", element_to_json(a.codensity)}};
}

json pointed_json(const PointedArrow& a) {
  return {{"arrow", element_to_json(a.g)}, {"point", element_to_json(a.r)}};
}

json closure_check_json(const SemigroupCheck& c, const Closure& cl) {
  json j = {{"holds", c.holds}, {"reason", c.reason}};
  if (c.witness) {
    j["witness"] = {element_to_json(cl.elements[c.witness->first]),
                    element_to_json(cl.elements[c.witness->second])};
  }
  return j;
}

Shape parse_shape(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      dims.push_back(std::stoi(part));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "bad shape '" + text + "'");
    }
    if (dims.back() <= 0) fail(ErrorKind::InvalidInput, "block sizes must be positive");
  }
  if (dims.empty()) fail(ErrorKind::InvalidInput, "empty shape");
  return Shape(dims);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groupoids, inverse semigroups and representations of finite-dimensional W*-algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--backend", g.backend, "Convert inputs to this backend")
      ->check(CLI::IsMember({"f64", "exact"}));
  app.add_option("--seed", g.seed, "Seed for sampling");
  app.add_option("--eps-eq", g.eps_eq, "Entrywise equality tolerance");
  app.add_option("--eps-rank", g.eps_rank, "Relative singular-value cutoff");

  std::function<json()> action;
  int status = 0;
  std::vector<std::string> files;
  std::string op, word_a, word_b, sign_mode = "literal", shape_text = "2", shapes_text, sizes_text;
  std::size_t samples = 200, cap = kDefaultClosureCap, isometries = 20;
  int n = 3, depth = 3, max_len = 3;
  bool star = false, fd = false;

  auto files_opt = [&](CLI::App* c, const char* what, bool required = true) {
    auto* o = c->add_option("files", files, what);
    if (required) o->required();
  };
  auto report_status = [&](const Report& r) {
    if (!r.pass()) status = kExitVerificationFailed;
    return r.to_json();
  };
  auto need = [&](std::size_t k, const char* usage) {
    if (files.size() != k) fail(ErrorKind::InvalidInput, std::string("expected ") + usage);
  };

  auto* polar = app.add_subcommand("polar", "Polar decomposition x = u|x|");
  files_opt(polar, "element file");
  polar->callback([&] {
    action = [&] {
      need(1, "one element");
      Polar p = polar_decompose(load_element(files[0], g).to_float(), g.tolerance());
      return json{{"u", element_to_json(p.u)}, {"absx", element_to_json(p.abs)}};
    };
  });

  auto* supports = app.add_subcommand("supports", "Left and right supports");
  files_opt(supports, "element file");
  supports->callback([&] {
    action = [&] {
      need(1, "one element");
      Element x = load_element(files[0], g);
      Tolerance t = g.tolerance();
      json out = {{"left", element_to_json(left_support(x, t))}, {"right", element_to_json(right_support(x, t))}};
      if (is_hermitian(x, t)) out["support"] = out["left"];
      return out;
    };
  });

  auto* compose = app.add_subcommand("compose", "Groupoid product xy");
  files_opt(compose, "two element files");
  compose->callback([&] {
    action = [&] {
      need(2, "two elements");
      return json{{"product", element_to_json(groupoid_compose(load_element(files[0], g), load_element(files[1], g), g.tolerance()))}};
    };
  });

  auto* inv = app.add_subcommand("inverse", "Groupoid inverse and the involution J");
  files_opt(inv, "element file");
  inv->callback([&] {
    action = [&] {
      need(1, "one element");
      Element x = load_element(files[0], g);
      return json{{"inverse", element_to_json(groupoid_inverse(x, g.tolerance()))},
                  {"J", element_to_json(involution_J(x, g.tolerance()))}};
    };
  });

  auto* inner = app.add_subcommand("inner-act", "x y inverse(x) for y in S(x) M S(x)");
  files_opt(inner, "arrow file and element file");
  inner->callback([&] {
    action = [&] {
      need(2, "arrow and element");
      return json{{"result", element_to_json(inner_action(load_element(files[0], g), load_element(files[1], g), g.tolerance()))}};
    };
  });

  auto* predual = app.add_subcommand("predual-act", "L*, R* or I* on a density");
  predual->add_option("--op", op, "L, R or I")->check(CLI::IsMember({"L", "R", "I"}))->required();
  files_opt(predual, "element file and density file");
  predual->callback([&] {
    action = [&] {
      need(2, "element and density");
      Element a = load_element(files[0], g);
      Functional w{load_element(files[1], g)};
      Functional out = op == "L" ? L_star(a, w) : op == "R" ? R_star(a, w) : I_star(a, w, g.tolerance());
      return json{{"density", element_to_json(out.density)}, {"norm", functional_norm(out)}};
    };
  });

  auto* lattice = app.add_subcommand("lattice", "Projection lattice operations");
  lattice->add_option("op", op, "meet, join, complement, leq, equiv, orbit-order")
      ->check(CLI::IsMember({"meet", "join", "complement", "leq", "equiv", "orbit-order"}))
      ->required();
  files_opt(lattice, "projection files");
  lattice->callback([&] {
    action = [&]() -> json {
      Tolerance t = g.tolerance();
      if (op == "orbit-order") {
        need(2, "two elements");
        return {{"order", to_string(orbit_order(orbit_invariant(load_element(files[0], g), t),
                                                orbit_invariant(load_element(files[1], g), t)))}};
      }
      Projection p = Projection::from_element(load_element(files.at(0), g), t);
      if (op == "complement") return {{"result", element_to_json(complement(p))}};
      need(2, "two projections");
      Projection q = Projection::from_element(load_element(files[1], g), t);
      if (op == "meet") return {{"result", element_to_json(meet(p, q, t))}};
      if (op == "join") return {{"result", element_to_json(join(p, q, t))}};
      if (op == "leq") return {{"leq", leq(p, q, t)}};
      auto w = mvn_equivalent(p, q, t);
      json out = {{"equivalent", w.has_value()}, {"ranks", {orbit_invariant(p, t), orbit_invariant(q, t)}}};
      if (w) out["witness"] = element_to_json(*w);
      return out;
    };
  });

  auto* closure = app.add_subcommand("closure", "Generated *-semigroup (exact backend)");
  closure->add_option("--cap", cap, "Maximum number of elements");
  files_opt(closure, "generator files");
  closure->callback([&] {
    action = [&] { return generate_closure(load_elements(files, g), cap).to_json(); };
  });

  auto* check_isg = app.add_subcommand("check-isg", "Inverse-semigroup and Clifford checks");
  check_isg->add_option("--cap", cap, "Maximum number of elements");
  files_opt(check_isg, "generator files");
  check_isg->callback([&] {
    action = [&] {
      Closure c = generate_closure(load_elements(files, g), cap);
      SemigroupCheck isg = check_inverse_semigroup(c);
      if (!isg.holds) status = kExitVerificationFailed;
      return json{{"size", c.size()},
                  {"closed", c.closed},
                  {"inverse_semigroup", closure_check_json(isg, c)},
                  {"clifford", closure_check_json(check_clifford(c), c)}};
    };
  });

  auto* mono = app.add_subcommand("monogenic-nf", "Normal form of a word in u and U = u*");
  mono->add_option("word", word_a, "word over {u, U}")->required();
  mono->add_option("--eval", files, "element to substitute for u");
  mono->callback([&] {
    action = [&] {
      MonogenicNF nf = monogenic_normal_form(word_a);
      GluskinForm gl = gluskin_form(nf);
      json out = {{"normal_form", nf.to_string()},
                  {"k", nf.k}, {"l", nf.l}, {"m", nf.m},
                  {"kind", nf.kind == MonogenicNF::Kind::Positive ? "positive" : "negative"},
                  {"gluskin", {gl.a, gl.b, gl.c}}};
      if (!files.empty()) out["value"] = element_to_json(nf.evaluate(load_element(files[0], g)));
      return out;
    };
  });

  auto* cuntz = app.add_subcommand("cuntz-mul", "Product of Cuntz words such as s[1]S[2,1]");
  cuntz->add_option("a", word_a)->required();
  cuntz->add_option("b", word_b);
  cuntz->add_flag("--star", star, "Adjoint of the first word instead");
  cuntz->callback([&] {
    action = [&] {
      CuntzWord a = CuntzWord::parse(word_a);
      if (star) return json{{"star", cuntz_star(a).to_string()}};
      if (word_b.empty()) fail(ErrorKind::InvalidInput, "cuntz-mul needs two words");
      return json{{"product", cuntz_mul(a, CuntzWord::parse(word_b)).to_string()}};
    };
  });

  auto* car = app.add_subcommand("car-mul", "Product of CAR words such as +P{1}Q{}C{2}A{3}");
  car->add_option("a", word_a)->required();
  car->add_option("b", word_b);
  car->add_flag("--star", star, "Adjoint of the first word instead");
  car->add_option("--n", n, "Modes for the matrix realization");
  car->callback([&] {
    action = [&] {
      CarWord a = CarWord::parse(word_a);
      if (star) return json{{"star", car_star(a).to_string()}};
      if (word_b.empty()) fail(ErrorKind::InvalidInput, "car-mul needs two words");
      CarWord b = CarWord::parse(word_b);
      CarWord p = car_mul(a, b);
      CarDisplay d = car_mul_display(a, b);
      return json{{"product", p.to_string()},
                  {"printed_formula", d.word.to_string()},
                  {"printed_sign_defined", d.sign_defined}};
    };
  });

  auto* car_ver = app.add_subcommand("car-verify", "Symbolic CAR products against Jordan-Wigner matrices");
  car_ver->add_option("--n", n, "Number of modes");
  car_ver->add_option("--max-len", max_len, "Maximum word weight");
  car_ver->callback([&] { action = [&] { return report_status(car_verify(n, max_len)); }; });

  auto* gns = app.add_subcommand("gns", "GNS space of a positive density");
  gns->add_option("--rep", word_a, "element to represent");
  files_opt(gns, "density file");
  gns->callback([&] {
    action = [&] {
      need(1, "one density");
      GnsSpace h = gns_space(Functional{load_element(files[0], g)}, g.tolerance());
      json basis = json::array();
      for (const auto& e : h.basis) basis.push_back(element_to_json(e));
      json out = {{"dim", h.dim()}, {"support", element_to_json(h.support)}, {"basis", basis}};
      if (!word_a.empty()) out["rep"] = matrix_to_json(gns_rep(load_element(word_a, g), h));
      return out;
    };
  });

  auto* phi = app.add_subcommand("rep-phi", "Fiber map of an arrow (u, w) between GNS spaces");
  files_opt(phi, "arrow file and density file");
  phi->callback([&] {
    action = [&] {
      need(2, "arrow and density");
      FiberMap f = groupoid_rep_phi(load_element(files[0], g), Functional{load_element(files[1], g)}, g.tolerance());
      Eigen::MatrixXcd gram = f.matrix.adjoint() * f.matrix;
      double defect = gram.size() ? (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() : 0.0;
      return json{{"matrix", matrix_to_json(f.matrix)},
                  {"source_dim", f.source.dim()},
                  {"target_dim", f.target.dim()},
                  {"target_state", element_to_json(f.target.state.density)},
                  {"isometry_defect", defect}};
    };
  });

  auto* comm = app.add_subcommand("commutant", "Commutation with the direct-sum representation");
  comm->add_option("--element", word_a, "test rep(y) for this element");
  comm->add_option("--arrow", word_b, "test the extended fiber map of this arrow at the first state");
  files_opt(comm, "density files");
  comm->callback([&] {
    action = [&] {
      Tolerance t = g.tolerance();
      std::vector<Functional> states;
      for (const auto& e : load_elements(files, g)) states.push_back({e});
      DirectSum sum = direct_sum(states, t);
      Eigen::MatrixXcd opm;
      if (!word_a.empty()) {
        opm = sum.rep(load_element(word_a, g));
      } else if (!word_b.empty()) {
        Element u = load_element(word_b, g);
        int tgt = sum.find(Functional{u.to_float() * sum.fibers[0].state.density * u.to_float().adjoint()}, kComposabilityTol);
        if (tgt < 0) fail(ErrorKind::InvalidInput, "target state is not in the family");
        opm = extend_fiber_map(sum, 0, tgt, u, t);
      } else {
        fail(ErrorKind::InvalidInput, "commutant needs --element or --arrow");
      }
      double d = commutant_defect(opm, sum);
      return json{{"defect", d},
                  {"in_commutant", d <= 1e-9},
                  {"faithful", sum.faithful()},
                  {"supports_cover_unit", sum.supports_cover_unit(t)},
                  {"dim", sum.dim}};
    };
  });

  auto* chart = app.add_subcommand("chart", "Chart coordinate and section of q at p");
  chart->add_option("--inverse", word_a, "coordinate file: return l(p + y) instead");
  files_opt(chart, "p and q files (p only with --inverse)");
  chart->callback([&] {
    action = [&]() -> json {
      Tolerance t = g.tolerance();
      Element p = load_element(files.at(0), g);
      if (!word_a.empty()) return {{"q", element_to_json(chart_phi_inv(p, load_element(word_a, g), t))}};
      need(2, "p and q");
      Element q = load_element(files[1], g);
      if (!in_chart_domain(q, p, t)) return {{"in_domain", false}};
      ChartPoint c = chart_point(p, q, t);
      return {{"in_domain", true}, {"x", element_to_json(c.x)}, {"y", element_to_json(c.y)}};
    };
  });

  auto* trans = app.add_subcommand("transition", "Closed-form chart transition from p to p2");
  files_opt(trans, "p, p2 and y files");
  trans->callback([&] {
    action = [&] {
      need(3, "p, p2 and y");
      Tolerance t = g.tolerance();
      Element p = load_element(files[0], g), p2 = load_element(files[1], g), y = load_element(files[2], g);
      Element y2 = lattice_transition(p, p2, y, t);
      Element composed = chart_phi(p2, chart_phi_inv(p, y, t), t);
      return json{{"y2", element_to_json(y2)}, {"composed_gap", y2.distance(composed)}};
    };
  });

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", op, "suite name")->check(CLI::IsMember(suite_names()))->required();
  verify->add_option("--shape", shape_text, "block sizes, e.g. 2,3");
  verify->add_option("--shapes", shapes_text, "shape list for infinite-obstruction, e.g. 2;1,1");
  verify->add_option("--samples", samples, "sample count");
  verify->add_option("--n", n, "modes / generators");
  verify->add_option("--depth", depth, "Cuntz word depth");
  verify->add_option("--max-len", max_len, "CAR word weight");
  verify->add_option("--sizes", sizes_text, "truncated shift sizes, e.g. 3,4,5");
  verify->add_option("--isometries", isometries, "partial isometries for the derivative check");
  verify->callback([&] {
    action = [&] {
      json o = {{"shape", shape_to_json(parse_shape(shape_text))}, {"samples", samples}, {"seed", g.seed},
                {"n", n}, {"depth", depth}, {"max_len", max_len}, {"isometries", isometries}};
      if (!sizes_text.empty()) o["sizes"] = parse_shape(sizes_text).dims;
      if (!shapes_text.empty()) {
        json list = json::array();
        std::stringstream ss(shapes_text);
        std::string part;
        while (std::getline(ss, part, ';')) list.push_back(shape_to_json(parse_shape(part)));
        o["shapes"] = list;
      }
      return report_status(run_suite(op, o));
    };
  });

  auto* bracket = app.add_subcommand("poisson-bracket", "{f_a, f_b} at a density");
  bracket->add_flag("--fd", fd, "Differentiate numerically");
  files_opt(bracket, "a, b and density files");
  bracket->callback([&] {
    action = [&] {
      need(3, "a, b and density");
      Element a = load_element(files[0], g), b = load_element(files[1], g);
      Functional w{load_element(files[2], g)};
      ScalarField fa = ScalarField::linear_field(a), fb = ScalarField::linear_field(b);
      if (fd) {
        fa = ScalarField::custom_field([a](const Functional& v) { return pairing(v, a); });
        fb = ScalarField::custom_field([b](const Functional& v) { return pairing(v, b); });
      }
      return json{{"bracket", complex_json(lie_poisson_bracket(fa, fb, w))}};
    };
  });

  auto* jac = app.add_subcommand("jacobi", "Jacobi defect of three linear fields");
  files_opt(jac, "a, b, c and density files");
  jac->callback([&] {
    action = [&] {
      need(4, "a, b, c and density");
      double d = jacobi_defect(ScalarField::linear_field(load_element(files[0], g)),
                               ScalarField::linear_field(load_element(files[1], g)),
                               ScalarField::linear_field(load_element(files[2], g)),
                               Functional{load_element(files[3], g)});
      return json{{"defect", d}};
    };
  });

  auto* tg = app.add_subcommand("tg", "Tangent groupoid: files hold {base, vec}");
  tg->add_option("op", op)->check(CLI::IsMember({"source", "target", "compose", "inverse", "identity"}))->required();
  files_opt(tg, "arrow files (an element for identity)");
  tg->callback([&] {
    action = [&]() -> json {
      if (op == "identity") return tangent_json(tg_identity(load_element(files.at(0), g)));
      TangentElement a = load_tangent(files.at(0));
      if (op == "source") return {{"source", element_to_json(tg_source(a))}};
      if (op == "target") return {{"target", element_to_json(tg_target(a))}};
      if (op == "inverse") return tangent_json(tg_inverse(a));
      need(2, "two arrows");
      return tangent_json(tg_compose(a, load_tangent(files[1])));
    };
  });

  auto* ctg = app.add_subcommand("ctg", "Cotangent groupoid: files hold {base, codensity}");
  ctg->add_option("op", op)->check(CLI::IsMember({"source", "target", "compose", "inverse", "identity"}))->required();
  files_opt(ctg, "arrow files (an element for identity)");
  ctg->callback([&] {
    action = [&]() -> json {
      if (op == "identity") return cotangent_json(ctg_identity(load_element(files.at(0), g)));
      CotangentElement a = load_cotangent(files.at(0));
      if (op == "source") return {{"source", element_to_json(ctg_source(a))}};
      if (op == "target") return {{"target", element_to_json(ctg_target(a))}};
      if (op == "inverse") return cotangent_json(ctg_inverse(a));
      need(2, "two arrows");
      return cotangent_json(ctg_compose(a, load_cotangent(files[1])));
    };
  });

  auto* lam = app.add_subcommand("lambda", "Immersion of a tangent (or, with --star, cotangent) arrow");
  lam->add_flag("--star", star, "Input is a cotangent arrow");
  files_opt(lam, "arrow file");
  lam->callback([&] {
    action = [&] {
      need(1, "one arrow");
      Tolerance t = g.tolerance();
      return pointed_json(star ? lambda_star_immersion(load_cotangent(files[0]), t)
                               : lambda_immersion(load_tangent(files[0]), t));
    };
  });

  auto* sympl = app.add_subcommand("symplectic", "Symplectic form at (g, rho) on two phase vectors");
  sympl->add_option("--sign-mode", sign_mode)->check(CLI::IsMember({"literal", "antisymmetrized"}));
  files_opt(sympl, "g, rho, v and w files (v, w hold {tangent, codensity})");
  sympl->callback([&] {
    action = [&] {
      need(4, "g, rho, v and w");
      auto phase = [&](const std::string& p) {
        json j = read_json(p);
        return PhaseVector{element_from_json(j.at("tangent")), element_from_json(j.at("codensity"))};
      };
      PhaseVector v = phase(files[2]), w = phase(files[3]);
      Element base = load_element(files[0], g);
      Functional rho{load_element(files[1], g)};
      SignMode m = parse_sign_mode(sign_mode);
      return json{{"value", complex_json(symplectic_form(base, rho, v, w, m))},
                  {"swapped", complex_json(symplectic_form(base, rho, w, v, m))},
                  {"sign_mode", to_string(m)}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }
  try {
    json out = action();
    std::cout << out.dump(2) << "\n";
    return status;
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "invalid-input"}, {"message", e.what()}}.dump() << "\n";
  } catch (const std::out_of_range& e) {
    std::cerr << json{{"error", "invalid-input"}, {"message", "missing argument"}}.dump() << "\n";
  }
  return kExitInputError;
}
