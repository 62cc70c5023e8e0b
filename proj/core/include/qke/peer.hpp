#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qke/protocol.hpp"
#include "qke/wire.hpp"

// Live exchange over a byte stream.  Sequence:
//
//   initiator -> ParamsOffer{p, g}
//   responder -> PublicKeyMsg{P, Q}
//   initiator -> PublicKeyMsg{P, Q}
//   both      -> IntermediateMsg{value}   (full duplex, no ordering)
//   both      -> Close{}
//
// The responder rejects offers whose p is not a safe prime, whose g is not
// a primitive root, or which differ from the group of its own key.

namespace qke {

class ByteStream {
 public:
  virtual ~ByteStream() = default;
  /// Returns 0 on orderly end of stream.
  virtual std::size_t read_some(std::span<std::uint8_t> buffer) = 0;
  virtual void write_all(std::span<const std::uint8_t> data) = 0;
};

inline constexpr std::chrono::milliseconds kDefaultIoTimeout{30000};

/// Owning wrapper around a connected socket descriptor.
class SocketStream final : public ByteStream {
 public:
  explicit SocketStream(int fd);
  SocketStream(SocketStream&& other) noexcept;
  SocketStream& operator=(SocketStream&& other) noexcept;
  SocketStream(const SocketStream&) = delete;
  SocketStream& operator=(const SocketStream&) = delete;
  ~SocketStream() override;

  std::size_t read_some(std::span<std::uint8_t> buffer) override;
  void write_all(std::span<const std::uint8_t> data) override;

  void set_timeout(std::chrono::milliseconds timeout);
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  /// "host:port"; IPv4 literals or resolvable names.  Throws kParameter.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

/// Throws kNetwork when the peer is unreachable.
SocketStream connect_tcp(const Endpoint& endpoint,
                         std::chrono::milliseconds timeout = kDefaultIoTimeout);

class TcpListener {
 public:
  /// Port 0 picks an ephemeral port; see local_endpoint().
  static TcpListener bind(const Endpoint& endpoint, int backlog = 16);

  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&& other) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  Endpoint local_endpoint() const;
  SocketStream accept();

 private:
  explicit TcpListener(int fd) : fd_(fd) {}
  int fd_ = -1;
};

/// Frame-level view of a byte stream.
class FramedChannel {
 public:
  explicit FramedChannel(ByteStream& stream) : stream_(stream) {}

  /// Throws kProtocol if the stream ends before a full frame arrives, and
  /// the codec's kFormat / kUnsupported errors for malformed input.
  Frame read();
  void write(const Frame& frame);

 private:
  ByteStream& stream_;
  FrameReader reader_;
};

struct PeerOptions {
  std::optional<DomainParams> expected_params;
};

struct PeerOutcome {
  BigUint shared_key;
  KeyStatus status = KeyStatus::kOk;
  IntermediateValue sent;
  IntermediateValue received;
};

/// Run one exchange.  Sequence violations and rejected values from the peer
/// raise kProtocol; transport failures raise kNetwork.
PeerOutcome run_initiator(ByteStream& stream, const KeyPair& local,
                          const PeerOptions& options = {});
PeerOutcome run_responder(ByteStream& stream, const KeyPair& local,
                          const PeerOptions& options = {});

}  // namespace qke
