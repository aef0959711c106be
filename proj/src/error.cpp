#include "wstar/error.hpp"

namespace wstar {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::BackendMismatch: return "backend-mismatch";
    case ErrorKind::UnsupportedBackend: return "unsupported-backend";
    case ErrorKind::NotPositive: return "not-positive";
    case ErrorKind::NotProjection: return "not-projection";
    case ErrorKind::NotPartialIsometry: return "not-partial-isometry";
    case ErrorKind::NotComposable: return "not-composable";
    case ErrorKind::MomentMismatch: return "moment-mismatch";
    case ErrorKind::NotInFiber: return "not-in-fiber";
    case ErrorKind::ChartDomain: return "chart-domain";
    case ErrorKind::OverlapViolation: return "overlap-violation";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::GradientFailure: return "gradient-failure";
    case ErrorKind::AxiomViolation: return "axiom-violation";
    case ErrorKind::InconsistentRepresentatives: return "inconsistent-representatives";
    case ErrorKind::NotInjective: return "not-injective";
    case ErrorKind::DimensionTooLarge: return "dimension-too-large";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace wstar
