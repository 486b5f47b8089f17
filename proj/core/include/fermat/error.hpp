#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fermat {

enum class ErrorCode {
  invalid_argument,
  exact_backend_root_needed,
  not_representable,
  root_not_exact,
  step_cap_exceeded,
  unresolved_classification,
  no_finite_m,
  no_real_preimage,
  not_in_slice_image,
  leading_term_mismatch,
  unknown_name,
  oracle_unavailable,
  missing_integral,
  taylor_order_cap,
  domain_error,
};

// Stable, kebab-case name used in CLI diagnostics.
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fermat
