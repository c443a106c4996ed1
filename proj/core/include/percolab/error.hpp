#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

// Error vocabulary shared by the library and the CLI. The kebab-case names are
// the machine-readable codes emitted in error JSON.
enum class errc {
  invalid_parameter,
  invalid_index,
  invalid_argument,
  invalid_config,
  capacity_exceeded,
  conditioning_on_null_event,
  not_applicable,
  numeric_failure,
  degenerate_threshold,
  non_monotone_detected,
  unknown_operation,
  unknown_suite,
  internal_invariant_violation,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_parameter: return "invalid-parameter";
    case errc::invalid_index: return "invalid-index";
    case errc::invalid_argument: return "invalid-argument";
    case errc::invalid_config: return "invalid-config";
    case errc::capacity_exceeded: return "capacity-exceeded";
    case errc::conditioning_on_null_event: return "conditioning-on-null-event";
    case errc::not_applicable: return "not-applicable";
    case errc::numeric_failure: return "numeric-failure";
    case errc::degenerate_threshold: return "degenerate-threshold";
    case errc::non_monotone_detected: return "non-monotone-detected";
    case errc::unknown_operation: return "unknown-operation";
    case errc::unknown_suite: return "unknown-suite";
    case errc::internal_invariant_violation: return "internal-invariant-violation";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

inline void require(bool cond, errc code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace percolab
