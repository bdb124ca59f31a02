#include "dbound/error.hpp"

namespace dbound {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_positive_definite: return "NotPositiveDefinite";
    case ErrorCode::invalid_alpha: return "InvalidAlpha";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::negligible_mass: return "NegligibleMass";
    case ErrorCode::acceptance_failure: return "AcceptanceFailure";
    case ErrorCode::config_error: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dbound
