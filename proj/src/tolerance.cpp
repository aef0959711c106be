#include "wstar/tolerance.hpp"

#include <cstdlib>
#include <string>

#include "wstar/error.hpp"

namespace wstar {

namespace {

void read_env(const char* name, double& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != std::string(raw).size() || !(v > 0.0)) throw std::invalid_argument(raw);
    target = v;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, std::string("bad value for ") + name + ": " + raw);
  }
}

}  // namespace

Tolerance Tolerance::from_env() {
  Tolerance t;
  read_env("WSTAR_EPS_EQ", t.eps_eq);
  read_env("WSTAR_EPS_RANK", t.eps_rank);
  return t;
}

}  // namespace wstar
