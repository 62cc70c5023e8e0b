#include "qke/errors.hpp"

namespace qke {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kNotInvertible: return "not-invertible";
    case ErrorCode::kProtocolOrder: return "protocol-order";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kIncomplete: return "incomplete";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kWidth: return "width";
    case ErrorCode::kScale: return "scale";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kNetwork: return "network";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

NotInvertibleError::NotInvertibleError(BigUint gcd)
    : Error(ErrorCode::kNotInvertible,
            "value is not invertible (gcd=" + gcd.to_dec() + ")"),
      gcd_(std::move(gcd)) {}

}  // namespace qke
