#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hosc {

/// Stable error taxonomy. The CLI prints `to_string(code)` on stderr, so the
/// spelling of each name is part of the external interface.
enum class ErrorCode {
  invalid_argument,
  incompatible_operands,
  degenerate_state,
  resolution_error,
  aliasing_error,
  grid_symmetry_error,
  near_caustic_error,
  grid_coverage_error,
  normalization_error,
  truncation_error,
  uncertainty_violation,
  moment_error,
  interpolation_error,
  io_error,
  parse_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::incompatible_operands: return "incompatible-operands";
    case ErrorCode::degenerate_state: return "degenerate-state";
    case ErrorCode::resolution_error: return "resolution-error";
    case ErrorCode::aliasing_error: return "aliasing-error";
    case ErrorCode::grid_symmetry_error: return "grid-symmetry-error";
    case ErrorCode::near_caustic_error: return "near-caustic-error";
    case ErrorCode::grid_coverage_error: return "grid-coverage-error";
    case ErrorCode::normalization_error: return "normalization-error";
    case ErrorCode::truncation_error: return "truncation-error";
    case ErrorCode::uncertainty_violation: return "uncertainty-violation";
    case ErrorCode::moment_error: return "moment-error";
    case ErrorCode::interpolation_error: return "interpolation-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Process exit status used by the CLI for each error class (0 is success,
/// 1 is reserved for failed checks).
constexpr int exit_status(ErrorCode code) noexcept { return 10 + static_cast<int>(code); }

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hosc
