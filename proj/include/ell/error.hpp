#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ell {

enum class ErrorKind {
  InvalidGrid,
  GridMismatch,
  NonZeroMean,
  MeanNotOne,
  NegativeDensity,
  OriginEvaluation,
  InvalidConfiguration,
  NotDivergenceFree,
  CflViolation,
  PhaseResolution,
  ResolutionGuard,
  InvalidState,
  EmptyHistory,
  EmptyPlan,
  InvalidArgument,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// True for the guard failures a caller can fix by changing numerical
/// parameters (grid, step, tolerances); false for malformed input.
bool is_numerical_guard(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace ell
