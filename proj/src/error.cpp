#include "ell/error.hpp"

namespace ell {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::MeanNotOne: return "MeanNotOne";
    case ErrorKind::NegativeDensity: return "NegativeDensity";
    case ErrorKind::OriginEvaluation: return "OriginEvaluation";
    case ErrorKind::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorKind::NotDivergenceFree: return "NotDivergenceFree";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::PhaseResolution: return "PhaseResolution";
    case ErrorKind::ResolutionGuard: return "ResolutionGuard";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::EmptyHistory: return "EmptyHistory";
    case ErrorKind::EmptyPlan: return "EmptyPlan";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

bool is_numerical_guard(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonZeroMean:
    case ErrorKind::MeanNotOne:
    case ErrorKind::NegativeDensity:
    case ErrorKind::OriginEvaluation:
    case ErrorKind::NotDivergenceFree:
    case ErrorKind::CflViolation:
    case ErrorKind::PhaseResolution:
    case ErrorKind::ResolutionGuard:
      return true;
    default:
      return false;
  }
}

}  // namespace ell
