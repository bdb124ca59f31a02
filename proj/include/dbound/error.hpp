#pragma once

#include <stdexcept>
#include <string>

namespace dbound {

enum class ErrorCode {
  dimension_mismatch,
  not_positive_definite,
  invalid_alpha,
  invalid_argument,
  negligible_mass,
  acceptance_failure,
  config_error,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dbound
