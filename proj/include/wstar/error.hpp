#pragma once

#include <stdexcept>
#include <string>

namespace wstar {

enum class ErrorKind {
  ShapeMismatch,
  BackendMismatch,
  UnsupportedBackend,
  NotPositive,
  NotProjection,
  NotPartialIsometry,
  NotComposable,
  MomentMismatch,
  NotInFiber,
  ChartDomain,
  OverlapViolation,
  InvalidInput,
  GradientFailure,
  AxiomViolation,
  InconsistentRepresentatives,
  NotInjective,
  DimensionTooLarge,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace wstar
