#include "orbitzeta/error.hpp"

namespace orbitzeta {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_hyperbolic: return "NotHyperbolic";
    case ErrorCode::invalid_group: return "InvalidGroup";
    case ErrorCode::ping_pong_violation: return "PingPongViolation";
    case ErrorCode::degenerate_disks: return "DegenerateDisks";
    case ErrorCode::empty_word: return "EmptyWord";
    case ErrorCode::resource_exceeded: return "ResourceExceeded";
    case ErrorCode::cutoff_exceeded: return "CutoffExceeded";
    case ErrorCode::too_few_geodesics: return "TooFewGeodesics";
    case ErrorCode::format_error: return "FormatError";
    case ErrorCode::digest_mismatch: return "DigestMismatch";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unknown_identifier: return "UnknownIdentifier";
    case ErrorCode::non_finite_value: return "NonFiniteValue";
    case ErrorCode::quadrature_nonconvergent: return "QuadratureNonconvergent";
    case ErrorCode::model_unsupported: return "ModelUnsupported";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::not_certified: return "NotCertified";
    case ErrorCode::abscissa_too_close: return "AbscissaTooClose";
    case ErrorCode::weight_missing: return "WeightMissing";
    case ErrorCode::no_sign_change: return "NoSignChange";
    case ErrorCode::bad_pinching: return "BadPinching";
    case ErrorCode::io_error: return "IOError";
  }
  return "Unknown";
}

}  // namespace orbitzeta
