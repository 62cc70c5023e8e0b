#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qke/biguint.hpp"
#include "qke/keys.hpp"

// Framed transport messages and fixed-width key encodings.
//
// Frame layout (all integers big-endian):
//
//   "QKE1" | type:1 | payload_len:4 | payload
//
// The payload is a sequence of integer fields, each a 4-octet length L
// followed by L octets of minimal magnitude (no leading zero octet; the
// value 0 is encoded with L = 0).

namespace qke {

inline constexpr std::array<std::uint8_t, 4> kFrameMagic = {0x51, 0x4B, 0x45, 0x31};
inline constexpr std::size_t kFrameHeaderSize = 9;
inline constexpr std::uint32_t kMaxFramePayload = 1u << 20;

enum class MessageType : std::uint8_t {
  kParamsOffer = 0x01,
  kPublicKey = 0x02,
  kIntermediate = 0x03,
  kClose = 0x04,
};

struct ParamsOfferMsg {
  BigUint p;
  BigUint g;
  friend bool operator==(const ParamsOfferMsg&, const ParamsOfferMsg&) = default;
};

struct PublicKeyMsg {
  BigUint P;
  BigUint Q;
  friend bool operator==(const PublicKeyMsg&, const PublicKeyMsg&) = default;
};

struct IntermediateMsg {
  BigUint value;
  friend bool operator==(const IntermediateMsg&, const IntermediateMsg&) = default;
};

struct CloseMsg {
  friend bool operator==(const CloseMsg&, const CloseMsg&) = default;
};

using Frame = std::variant<ParamsOfferMsg, PublicKeyMsg, IntermediateMsg, CloseMsg>;

MessageType message_type(const Frame& frame);
const char* to_string(MessageType type) noexcept;

std::vector<std::uint8_t> encode_frame(const Frame& frame);

/// Decodes exactly one frame occupying all of `octets`.
/// Throws kFormat (bad magic, malformed payload, trailing octets),
/// kUnsupported (unknown type) or kIncomplete (not enough octets yet).
Frame decode_frame(std::span<const std::uint8_t> octets);

struct DecodedFrame {
  Frame frame;
  std::size_t consumed = 0;
};

/// Decodes the frame at the front of `octets`, if complete.  Errors are
/// reported as soon as the offending octet is visible.
std::optional<DecodedFrame> try_decode_frame(std::span<const std::uint8_t> octets);

/// Reassembles frames from arbitrarily chunked input.
class FrameReader {
 public:
  void feed(std::span<const std::uint8_t> chunk);
  std::optional<Frame> next();
  std::size_t buffered() const { return buffer_.size() - offset_; }

 private:
  std::vector<std::uint8_t> buffer_;
  std::size_t offset_ = 0;
};

/// Octets per component for the group: ceil(|p| / 8).
std::size_t key_component_width(const DomainParams& params);

/// Exactly `width` octets, big-endian, zero padded.  Throws kWidth if the value
/// needs more.
std::vector<std::uint8_t> fixed_width_encode(const BigUint& value, std::size_t width);
/// x || y || z, 3 * width octets.
std::vector<std::uint8_t> fixed_width_encode(const PrivateKey& key, std::size_t width);
/// P || Q, 2 * width octets.
std::vector<std::uint8_t> fixed_width_encode(const PublicKey& key, std::size_t width);

PrivateKey fixed_width_decode_private(std::span<const std::uint8_t> octets,
                                      const DomainParams& params);
PublicKey fixed_width_decode_public(std::span<const std::uint8_t> octets,
                                    const DomainParams& params);

}  // namespace qke
