#include "fermat/error.hpp"

namespace fermat {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::exact_backend_root_needed: return "exact-backend-root-needed";
    case ErrorCode::not_representable: return "not-representable";
    case ErrorCode::root_not_exact: return "root-not-exact";
    case ErrorCode::step_cap_exceeded: return "step-cap-exceeded";
    case ErrorCode::unresolved_classification: return "unresolved-classification";
    case ErrorCode::no_finite_m: return "no-finite-m";
    case ErrorCode::no_real_preimage: return "no-real-preimage";
    case ErrorCode::not_in_slice_image: return "not-in-slice-image";
    case ErrorCode::leading_term_mismatch: return "leading-term-mismatch";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::oracle_unavailable: return "oracle-unavailable";
    case ErrorCode::missing_integral: return "missing-integral";
    case ErrorCode::taylor_order_cap: return "taylor-order-cap";
    case ErrorCode::domain_error: return "domain-error";
  }
  return "unknown";
}

}  // namespace fermat
