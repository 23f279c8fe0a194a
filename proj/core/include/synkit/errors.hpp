#pragma once

#include <stdexcept>
#include <string>

namespace synkit {

enum class ErrorCode {
  shape_mismatch,
  parse_error,
  invalid_graph,
  bound_too_small,
  zero_not_simple,
  not_neutrally_stable,
  not_schur,
  not_uniform_rank_one,
  not_left_invertible,
  detectability_lost,
  output_form_unreachable,
  observer_design_failed,
  precondition_failed,
  epsilon_too_large,
  delta_too_large,
  divergence,
  spectrum_mismatch,
  not_siso,
  numeric_failure,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace synkit
