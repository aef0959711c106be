#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "wstar/json_io.hpp"

using namespace wstar;
using namespace wstar::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(WSTAR_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("wstar_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const json& j) const {
    fs::path p = path_ / name;
    std::ofstream(p) << j.dump();
    return p.string();
  }
  std::string write_text(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

json parse(const Run& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("polar") {
  TempDir dir;
  std::string x = dir.write("x.json", element_to_json(el({{0, 2}, {0, 0}})));
  Run r = run("polar " + x);
  REQUIRE(r.code == 0);
  json j = parse(r);
  check_close(element_from_json(j["u"]), el({{0, 1}, {0, 0}}));
  check_close(element_from_json(j["absx"]), diag({0, 2}));
}

TEST_CASE("groupoid verbs") {
  TempDir dir;
  std::string x = dir.write("x.json", element_to_json(el({{0, 2}, {0, 0}})));
  std::string y = dir.write("y.json", element_to_json(el({{0, 0}, {3, 0}})));
  Run c = run("compose " + x + " " + y);
  REQUIRE(c.code == 0);
  check_close(element_from_json(parse(c)["product"]), diag({6, 0}));
  CHECK(run("compose " + x + " " + x).code == 1);
  Run inv = run("inverse " + x);
  REQUIRE(inv.code == 0);
  check_close(element_from_json(parse(inv)["inverse"]), el({{0, 0}, {0.5, 0}}));
  check_close(element_from_json(parse(inv)["J"]), el({{0, 0.5}, {0, 0}}));
  Run s = run("supports " + x);
  REQUIRE(s.code == 0);
  check_close(element_from_json(parse(s)["left"]), diag({1, 0}));
}

TEST_CASE("predual and lattice verbs") {
  TempDir dir;
  std::string u = dir.write("u.json", element_to_json(el({{0, 0}, {1, 0}})));
  std::string p = dir.write("p.json", element_to_json(diag({1, 0})));
  std::string q = dir.write("q.json", element_to_json(half_ones()));
  Run act = run("predual-act --op I " + u + " " + p);
  REQUIRE(act.code == 0);
  check_close(element_from_json(parse(act)["density"]), diag({0, 1}));
  Run meet = run("lattice meet " + p + " " + q);
  REQUIRE(meet.code == 0);
  CHECK(element_from_json(parse(meet)["result"]).is_zero(1e-12));
  Run ord = run("lattice orbit-order " + p + " " + q);
  REQUIRE(ord.code == 0);
  CHECK(parse(ord)["order"] == "equal");
}

TEST_CASE("exact backend closure and inverse-semigroup check") {
  TempDir dir;
  json gens = json::array();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) gens.push_back(element_to_json(Element::matrix_unit(Shape{2}, 0, i, j, Backend::Exact)));
  std::string g = dir.write("g.json", gens);
  Run c = run("closure " + g);
  REQUIRE(c.code == 0);
  CHECK(parse(c)["size"] == 5);
  Run ok = run("check-isg " + g);
  CHECK(ok.code == 0);

  json bad = json::array({element_to_json(diag({1, 0})), element_to_json(half_ones())});
  std::string b = dir.write("bad.json", bad);
  Run fail = run("--backend exact check-isg --cap 200 " + b);
  CHECK(fail.code == 2);
  CHECK(parse(fail)["inverse_semigroup"]["holds"] == false);
}

TEST_CASE("symbolic verbs") {
  Run m = run("monogenic-nf uUu");
  REQUIRE(m.code == 0);
  CHECK(parse(m)["gluskin"] == json::array({1, 1, 1}));
  Run cz = run("cuntz-mul 's[1]S[2,1]' 's[2]S[3]'");
  REQUIRE(cz.code == 0);
  CHECK(parse(cz)["product"] == "s[1]S[3,1]");
  Run car = run("car-mul 'A{1}' 'C{1}'");
  REQUIRE(car.code == 0);
  CHECK(parse(car)["product"] == "+P{1}Q{}C{}A{}");
  Run ver = run("car-verify --n 3 --max-len 3");
  CHECK(ver.code == 0);
  CHECK(parse(ver)["pass"] == true);
}

TEST_CASE("GNS and chart verbs") {
  TempDir dir;
  std::string rho = dir.write("rho.json", element_to_json(diag({1, 0})));
  Run g = run("gns " + rho);
  REQUIRE(g.code == 0);
  CHECK(parse(g)["dim"] == 2);
  std::string u = dir.write("u.json", element_to_json(el({{0, 0}, {1, 0}})));
  Run phi = run("rep-phi " + u + " " + rho);
  REQUIRE(phi.code == 0);
  CHECK(parse(phi)["isometry_defect"].get<double>() < 1e-12);
  std::string q = dir.write("q.json", element_to_json(half_ones()));
  Run ch = run("chart " + rho + " " + q);
  REQUIRE(ch.code == 0);
  check_close(element_from_json(parse(ch)["y"]), el({{0, 0}, {1, 0}}));
}

TEST_CASE("Poisson verbs") {
  TempDir dir;
  std::string a = dir.write("a.json", element_to_json(Element::matrix_unit(Shape{2}, 0, 0, 1)));
  std::string b = dir.write("b.json", element_to_json(Element::matrix_unit(Shape{2}, 0, 1, 0)));
  std::string w = dir.write("w.json", element_to_json(Element::matrix_unit(Shape{2}, 0, 0, 0)));
  Run br = run("poisson-bracket " + a + " " + b + " " + w);
  REQUIRE(br.code == 0);
  CHECK(parse(br)["bracket"][0].get<double>() == doctest::Approx(1.0));
  Run fd = run("poisson-bracket --fd " + a + " " + b + " " + w);
  REQUIRE(fd.code == 0);
  CHECK(parse(fd)["bracket"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  std::string t = dir.write("t.json", json{{"base", element_to_json(Element::identity(Shape{2}))},
                                            {"vec", element_to_json(el({{1, 2}, {2, 4}}))}});
  Run lam = run("lambda " + t);
  REQUIRE(lam.code == 0);
  check_close(element_from_json(parse(lam)["point"]), el({{1, 2}, {2, 4}}));
  Run src = run("tg source " + t);
  REQUIRE(src.code == 0);
}

TEST_CASE("verification reports are deterministic") {
  Run a = run("verify groupoid-axioms --shape 2 --samples 200 --seed 7");
  Run b = run("verify groupoid-axioms --shape 2 --samples 200 --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  json j = parse(a);
  for (const char* key : {"check", "params", "seed", "max_defect", "pass"}) CHECK(j.contains(key));
  CHECK(j["seed"] == 7);
}

TEST_CASE("input errors exit with 1") {
  TempDir dir;
  std::string bad = dir.write_text("bad.json", "{not json");
  CHECK(run("polar " + bad).code == 1);
  CHECK(run("no-such-verb").code == 1);
  CHECK(run("polar /nonexistent/file.json").code == 1);
  std::string x2 = dir.write("x2.json", element_to_json(Element::identity(Shape{2})));
  std::string x3 = dir.write("x3.json", element_to_json(Element::identity(Shape{3})));
  CHECK(run("compose " + x2 + " " + x3).code == 1);
  CHECK(run("verify nonsense").code == 1);
}
