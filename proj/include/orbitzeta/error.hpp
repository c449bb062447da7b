#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitzeta {

enum class ErrorCode {
  invalid_argument,
  not_hyperbolic,
  invalid_group,
  ping_pong_violation,
  degenerate_disks,
  empty_word,
  resource_exceeded,
  cutoff_exceeded,
  too_few_geodesics,
  format_error,
  digest_mismatch,
  parse_error,
  unknown_identifier,
  non_finite_value,
  quadrature_nonconvergent,
  model_unsupported,
  insufficient_data,
  not_certified,
  abscissa_too_close,
  weight_missing,
  no_sign_change,
  bad_pinching,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports carries one of the codes above; the CLI
// maps them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace orbitzeta
