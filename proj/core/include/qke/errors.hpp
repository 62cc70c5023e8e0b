#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qke/biguint.hpp"

namespace qke {

enum class ErrorCode {
  kParameter,      // malformed or inconsistent domain parameters / arguments
  kNotInvertible,  // modular inverse does not exist
  kProtocolOrder,  // session operation called in the wrong state
  kValidation,     // value outside its admissible range
  kFormat,         // malformed wire frame or key text
  kIncomplete,     // frame is truncated; more octets may complete it
  kUnsupported,    // unknown frame type
  kWidth,          // value does not fit a fixed-width field
  kScale,          // group too large for the desk-scale analysis caps
  kProtocol,       // peer violated the live exchange sequence
  kNetwork,        // socket-level failure
  kIo,             // file-system failure
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by mod_inv; carries gcd(a, m) so callers can see why.
class NotInvertibleError : public Error {
 public:
  explicit NotInvertibleError(BigUint gcd);

  const BigUint& gcd() const noexcept { return gcd_; }

 private:
  BigUint gcd_;
};

}  // namespace qke
