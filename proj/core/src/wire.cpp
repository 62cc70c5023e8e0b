#include "qke/wire.hpp"

#include <algorithm>
#include <string>

#include "qke/errors.hpp"

namespace qke {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  return (std::uint32_t{in[0]} << 24) | (std::uint32_t{in[1]} << 16) |
         (std::uint32_t{in[2]} << 8) | std::uint32_t{in[3]};
}

void put_field(std::vector<std::uint8_t>& out, const BigUint& v) {
  const std::vector<std::uint8_t> magnitude = v.to_bytes_be();
  put_u32(out, static_cast<std::uint32_t>(magnitude.size()));
  out.insert(out.end(), magnitude.begin(), magnitude.end());
}

std::vector<BigUint> parse_fields(std::span<const std::uint8_t> payload) {
  std::vector<BigUint> fields;
  std::size_t pos = 0;
  while (pos < payload.size()) {
    if (payload.size() - pos < 4) {
      throw Error(ErrorCode::kFormat, "integer field length is truncated");
    }
    const std::uint32_t len = get_u32(payload.subspan(pos, 4));
    pos += 4;
    if (payload.size() - pos < len) {
      throw Error(ErrorCode::kFormat, "integer field overruns the payload");
    }
    const auto magnitude = payload.subspan(pos, len);
    if (len > 0 && magnitude[0] == 0) {
      throw Error(ErrorCode::kFormat, "integer field has a leading zero octet");
    }
    fields.push_back(BigUint::from_bytes_be(magnitude));
    pos += len;
  }
  return fields;
}

bool known_type(std::uint8_t t) { return t >= 0x01 && t <= 0x04; }

std::size_t expected_fields(MessageType type) {
  switch (type) {
    case MessageType::kParamsOffer: return 2;
    case MessageType::kPublicKey: return 2;
    case MessageType::kIntermediate: return 1;
    case MessageType::kClose: return 0;
  }
  return 0;
}

Frame build_frame(MessageType type, std::vector<BigUint> fields) {
  if (fields.size() != expected_fields(type)) {
    throw Error(ErrorCode::kFormat, std::string(to_string(type)) + " frame carries " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(expected_fields(type)));
  }
  switch (type) {
    case MessageType::kParamsOffer: return ParamsOfferMsg{std::move(fields[0]), std::move(fields[1])};
    case MessageType::kPublicKey: return PublicKeyMsg{std::move(fields[0]), std::move(fields[1])};
    case MessageType::kIntermediate: return IntermediateMsg{std::move(fields[0])};
    case MessageType::kClose: return CloseMsg{};
  }
  throw Error(ErrorCode::kUnsupported, "unknown message type");
}

}  // namespace

MessageType message_type(const Frame& frame) {
  return std::visit(
      [](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, ParamsOfferMsg>) return MessageType::kParamsOffer;
        if constexpr (std::is_same_v<T, PublicKeyMsg>) return MessageType::kPublicKey;
        if constexpr (std::is_same_v<T, IntermediateMsg>) return MessageType::kIntermediate;
        if constexpr (std::is_same_v<T, CloseMsg>) return MessageType::kClose;
      },
      frame);
}

const char* to_string(MessageType type) noexcept {
  switch (type) {
    case MessageType::kParamsOffer: return "ParamsOffer";
    case MessageType::kPublicKey: return "PublicKeyMsg";
    case MessageType::kIntermediate: return "IntermediateMsg";
    case MessageType::kClose: return "Close";
  }
  return "?";
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  std::vector<std::uint8_t> payload;
  std::visit(
      [&](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, ParamsOfferMsg>) {
          put_field(payload, msg.p);
          put_field(payload, msg.g);
        } else if constexpr (std::is_same_v<T, PublicKeyMsg>) {
          put_field(payload, msg.P);
          put_field(payload, msg.Q);
        } else if constexpr (std::is_same_v<T, IntermediateMsg>) {
          put_field(payload, msg.value);
        }
      },
      frame);
  if (payload.size() > kMaxFramePayload) {
    throw Error(ErrorCode::kWidth, "frame payload exceeds " + std::to_string(kMaxFramePayload) + " octets");
  }
  std::vector<std::uint8_t> out(kFrameMagic.begin(), kFrameMagic.end());
  out.reserve(kFrameHeaderSize + payload.size());
  out.push_back(static_cast<std::uint8_t>(message_type(frame)));
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::optional<DecodedFrame> try_decode_frame(std::span<const std::uint8_t> octets) {
  const std::size_t magic_seen = std::min(octets.size(), kFrameMagic.size());
  if (!std::equal(octets.begin(), octets.begin() + static_cast<std::ptrdiff_t>(magic_seen),
                  kFrameMagic.begin())) {
    throw Error(ErrorCode::kFormat, "bad frame magic");
  }
  if (octets.size() < 5) return std::nullopt;
  const std::uint8_t type = octets[4];
  if (!known_type(type)) {
    throw Error(ErrorCode::kUnsupported, "unknown message type 0x" + BigUint(type).to_hex());
  }
  if (octets.size() < kFrameHeaderSize) return std::nullopt;
  const std::uint32_t payload_len = get_u32(octets.subspan(5, 4));
  if (payload_len > kMaxFramePayload) {
    throw Error(ErrorCode::kFormat, "frame payload length " + std::to_string(payload_len) +
                                        " exceeds limit");
  }
  if (octets.size() - kFrameHeaderSize < payload_len) return std::nullopt;
  const auto payload = octets.subspan(kFrameHeaderSize, payload_len);
  return DecodedFrame{build_frame(static_cast<MessageType>(type), parse_fields(payload)),
                      kFrameHeaderSize + payload_len};
}

Frame decode_frame(std::span<const std::uint8_t> octets) {
  std::optional<DecodedFrame> decoded = try_decode_frame(octets);
  if (!decoded) throw Error(ErrorCode::kIncomplete, "frame is truncated");
  if (decoded->consumed != octets.size()) {
    throw Error(ErrorCode::kFormat, "trailing octets after frame");
  }
  return std::move(decoded->frame);
}

void FrameReader::feed(std::span<const std::uint8_t> chunk) {
  if (offset_ > 0 && offset_ == buffer_.size()) {
    buffer_.clear();
    offset_ = 0;
  }
  buffer_.insert(buffer_.end(), chunk.begin(), chunk.end());
}

std::optional<Frame> FrameReader::next() {
  const std::span<const std::uint8_t> pending(buffer_.data() + offset_, buffer_.size() - offset_);
  std::optional<DecodedFrame> decoded = try_decode_frame(pending);
  if (!decoded) return std::nullopt;
  offset_ += decoded->consumed;
  return std::move(decoded->frame);
}

std::size_t key_component_width(const DomainParams& params) { return params.p().byte_length(); }

std::vector<std::uint8_t> fixed_width_encode(const BigUint& value, std::size_t width) {
  std::vector<std::uint8_t> magnitude = value.to_bytes_be();
  if (magnitude.size() > width) {
    throw Error(ErrorCode::kWidth, "value needs " + std::to_string(magnitude.size()) +
                                       " octets, field holds " + std::to_string(width));
  }
  std::vector<std::uint8_t> out(width - magnitude.size(), 0);
  out.insert(out.end(), magnitude.begin(), magnitude.end());
  return out;
}

std::vector<std::uint8_t> fixed_width_encode(const PrivateKey& key, std::size_t width) {
  std::vector<std::uint8_t> out;
  out.reserve(3 * width);
  for (const BigUint* part : {&key.x(), &key.y(), &key.z()}) {
    const auto bytes = fixed_width_encode(*part, width);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

std::vector<std::uint8_t> fixed_width_encode(const PublicKey& key, std::size_t width) {
  std::vector<std::uint8_t> out = fixed_width_encode(key.P, width);
  const auto q = fixed_width_encode(key.Q, width);
  out.insert(out.end(), q.begin(), q.end());
  return out;
}

PrivateKey fixed_width_decode_private(std::span<const std::uint8_t> octets,
                                      const DomainParams& params) {
  const std::size_t width = key_component_width(params);
  if (octets.size() != 3 * width) {
    throw Error(ErrorCode::kWidth, "private key encoding must be " + std::to_string(3 * width) +
                                       " octets");
  }
  return PrivateKey::from_exponents(params, BigUint::from_bytes_be(octets.subspan(0, width)),
                                    BigUint::from_bytes_be(octets.subspan(width, width)),
                                    BigUint::from_bytes_be(octets.subspan(2 * width, width)));
}

PublicKey fixed_width_decode_public(std::span<const std::uint8_t> octets,
                                    const DomainParams& params) {
  const std::size_t width = key_component_width(params);
  if (octets.size() != 2 * width) {
    throw Error(ErrorCode::kWidth, "public key encoding must be " + std::to_string(2 * width) +
                                       " octets");
  }
  return PublicKey{BigUint::from_bytes_be(octets.subspan(0, width)),
                   BigUint::from_bytes_be(octets.subspan(width, width)), params};
}

}  // namespace qke
