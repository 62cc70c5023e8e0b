#include <gtest/gtest.h>

#include "qke/errors.hpp"
#include "qke/protocol.hpp"
#include "qke/wire.hpp"

namespace qke {
namespace {

using Bytes = std::vector<std::uint8_t>;

// Independent octet-level writer.
void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

Bytes reference_frame(std::uint8_t type, const std::vector<std::uint64_t>& fields) {
  Bytes payload;
  for (std::uint64_t f : fields) {
    Bytes mag;
    for (std::uint64_t v = f; v != 0; v >>= 8) mag.insert(mag.begin(), static_cast<std::uint8_t>(v));
    put_u32(payload, static_cast<std::uint32_t>(mag.size()));
    payload.insert(payload.end(), mag.begin(), mag.end());
  }
  Bytes out = {'Q', 'K', 'E', '1', type};
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

ErrorCode decode_error(const Bytes& octets) {
  try {
    decode_frame(octets);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decoded without error";
  return ErrorCode::kIo;
}

TEST(Frame, GoldenIntermediate) {
  const Bytes golden = {0x51, 0x4B, 0x45, 0x31, 0x03, 0x00, 0x00, 0x00, 0x05,
                        0x00, 0x00, 0x00, 0x01, 0x0F};
  ASSERT_EQ(reference_frame(3, {15}), golden);
  EXPECT_EQ(encode_frame(IntermediateMsg{15}), golden);
  EXPECT_EQ(decode_frame(golden), Frame(IntermediateMsg{15}));
}

TEST(Frame, ZeroFieldsAreEmpty) {
  const Bytes encoded = encode_frame(PublicKeyMsg{0, 0});
  const Bytes payload(encoded.begin() + kFrameHeaderSize, encoded.end());
  EXPECT_EQ(payload, Bytes(8, 0));
  EXPECT_EQ(encode_frame(CloseMsg{}), reference_frame(4, {}));
  EXPECT_EQ(encode_frame(ParamsOfferMsg{23, 5}), reference_frame(1, {23, 5}));
  EXPECT_EQ(encode_frame(PublicKeyMsg{17, 9}), reference_frame(2, {17, 9}));
}

Frame random_frame(SeededRandom& rng) {
  auto value = [&] { return rng.random_bits(rng.next_u64() % 600); };
  switch (rng.next_u64() % 4) {
    case 0: return ParamsOfferMsg{value(), value()};
    case 1: return PublicKeyMsg{value(), value()};
    case 2: return IntermediateMsg{value()};
    default: return CloseMsg{};
  }
}

TEST(Frame, RoundTripAndChunkedStreaming) {
  SeededRandom rng(1000);
  std::vector<Frame> frames;
  Bytes stream;
  for (int i = 0; i < 1000; ++i) {
    frames.push_back(random_frame(rng));
    const Bytes encoded = encode_frame(frames.back());
    ASSERT_EQ(decode_frame(encoded), frames.back());
    stream.insert(stream.end(), encoded.begin(), encoded.end());
  }
  for (int trial = 0; trial < 5; ++trial) {
    FrameReader reader;
    std::vector<Frame> got;
    std::size_t pos = 0;
    while (pos < stream.size()) {
      const std::size_t len = std::min<std::size_t>(1 + rng.next_u64() % 40, stream.size() - pos);
      reader.feed(std::span(stream).subspan(pos, len));
      pos += len;
      while (auto f = reader.next()) got.push_back(std::move(*f));
    }
    EXPECT_EQ(reader.buffered(), 0u);
    ASSERT_EQ(got, frames);
  }
}

TEST(Frame, ByteAtATime) {
  const Bytes encoded = encode_frame(ParamsOfferMsg{23, 5});
  FrameReader reader;
  for (std::size_t i = 0; i + 1 < encoded.size(); ++i) {
    reader.feed(std::span(encoded).subspan(i, 1));
    EXPECT_FALSE(reader.next());
  }
  reader.feed(std::span(encoded).subspan(encoded.size() - 1));
  EXPECT_EQ(reader.next(), Frame(ParamsOfferMsg{23, 5}));
}

TEST(Frame, ErrorKinds) {
  const Bytes good = encode_frame(PublicKeyMsg{17, 9});
  Bytes bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(decode_error(bad_magic), ErrorCode::kFormat);
  EXPECT_EQ(decode_error(Bytes{'Q', 'K', 'X'}), ErrorCode::kFormat);

  for (std::size_t cut = 0; cut < good.size(); ++cut) {
    EXPECT_EQ(decode_error(Bytes(good.begin(), good.begin() + cut)), ErrorCode::kIncomplete) << cut;
  }

  Bytes unknown = good;
  unknown[4] = 0x09;
  EXPECT_EQ(decode_error(unknown), ErrorCode::kUnsupported);
  unknown[4] = 0x00;
  EXPECT_EQ(decode_error(unknown), ErrorCode::kUnsupported);

  Bytes trailing = good;
  trailing.push_back(0);
  EXPECT_EQ(decode_error(trailing), ErrorCode::kFormat);

  // Leading zero octet in a field.
  Bytes padded = {'Q', 'K', 'E', '1', 3, 0, 0, 0, 6, 0, 0, 0, 2, 0, 15};
  EXPECT_EQ(decode_error(padded), ErrorCode::kFormat);

  // Wrong field count for the type.
  EXPECT_EQ(decode_error(reference_frame(3, {15, 1})), ErrorCode::kFormat);
  EXPECT_EQ(decode_error(reference_frame(2, {15})), ErrorCode::kFormat);

  // Field length running past the payload.
  Bytes overrun = {'Q', 'K', 'E', '1', 3, 0, 0, 0, 5, 0, 0, 0, 9, 15};
  EXPECT_EQ(decode_error(overrun), ErrorCode::kFormat);

  // Oversized payload length is refused before buffering.
  Bytes huge = {'Q', 'K', 'E', '1', 3, 0x7f, 0xff, 0xff, 0xff};
  EXPECT_EQ(decode_error(huge), ErrorCode::kFormat);
}

TEST(FixedWidth, TableSizes) {
  SeededRandom rng(3);
  for (std::size_t bits : {128u, 256u, 512u}) {
    const DomainParams params = generate_domain_params(bits, rng);
    const KeyPair a = generate_keypair(params, rng);
    const KeyPair b = generate_keypair(params, rng);
    const std::size_t width = key_component_width(params);
    EXPECT_EQ(width, bits / 8);
    EXPECT_EQ(fixed_width_encode(a.private_key, width).size() * 8, 3 * bits);
    EXPECT_EQ(fixed_width_encode(a.public_key, width).size() * 8, 2 * bits);
    EXPECT_EQ(fixed_width_encode(expected_shared_key(a.private_key, b.private_key), width).size() * 8,
              bits);
    EXPECT_EQ(fixed_width_decode_private(fixed_width_encode(a.private_key, width), params),
              a.private_key);
    EXPECT_EQ(fixed_width_decode_public(fixed_width_encode(a.public_key, width), params),
              a.public_key);
  }
}

TEST(FixedWidth, PaddingAndOverflow) {
  EXPECT_EQ(fixed_width_encode(BigUint(0), 4), Bytes(4, 0));
  EXPECT_EQ(fixed_width_encode(BigUint(0x0102), 4), (Bytes{0, 0, 1, 2}));
  try {
    fixed_width_encode(BigUint(0x010203), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWidth);
  }
  const DomainParams params = DomainParams::create(23, 5);
  EXPECT_EQ(fixed_width_encode(PrivateKey::from_exponents(params, 3, 6, 4), 1),
            (Bytes{3, 6, 4}));
  EXPECT_THROW(fixed_width_decode_private(Bytes{3, 6}, params), Error);
}

}  // namespace
}  // namespace qke
