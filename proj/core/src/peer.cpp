#include "qke/peer.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>

#include "qke/errors.hpp"

namespace qke {

namespace {

// Offers above this size are refused before any primality work.
constexpr std::size_t kMaxOfferedModulusBits = 8192;

[[noreturn]] void throw_errno(const std::string& what) {
  throw Error(ErrorCode::kNetwork, what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const Endpoint& endpoint) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(endpoint.port);
  if (inet_pton(AF_INET, endpoint.host.c_str(), &addr.sin_addr) == 1) return addr;

  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  if (getaddrinfo(endpoint.host.c_str(), nullptr, &hints, &result) != 0 || result == nullptr) {
    throw Error(ErrorCode::kNetwork, "cannot resolve host '" + endpoint.host + "'");
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(result->ai_addr)->sin_addr;
  freeaddrinfo(result);
  return addr;
}

template <typename T>
T expect(Frame frame, const char* step) {
  if (auto* msg = std::get_if<T>(&frame)) return std::move(*msg);
  throw Error(ErrorCode::kProtocol, std::string("expected ") + step + ", received " +
                                        to_string(message_type(frame)));
}

DomainParams accept_offer(const ParamsOfferMsg& offer) {
  if (offer.p.bit_length() > kMaxOfferedModulusBits) {
    throw Error(ErrorCode::kProtocol, "offered modulus is larger than " +
                                          std::to_string(kMaxOfferedModulusBits) + " bits");
  }
  try {
    return DomainParams::create(offer.p, offer.g);
  } catch (const Error& e) {
    throw Error(ErrorCode::kProtocol, std::string("offered parameters rejected: ") + e.what());
  }
}

void check_expected(const DomainParams& actual, const PeerOptions& options) {
  if (options.expected_params && !(*options.expected_params == actual)) {
    throw Error(ErrorCode::kProtocol, "group does not match the expected parameters");
  }
}

// Shared tail: public key in, intermediates both ways, Close both ways.
PeerOutcome finish_exchange(FramedChannel& channel, Session& session, const PublicKeyMsg& peer) {
  try {
    session.receive_peer_public(
        PublicKey{peer.P, peer.Q, session.local().public_key.params});
  } catch (const Error& e) {
    throw Error(ErrorCode::kProtocol, std::string("peer public key rejected: ") + e.what());
  }
  const IntermediateValue sent = session.compute_intermediate();
  channel.write(IntermediateMsg{sent.value});

  const auto incoming = expect<IntermediateMsg>(channel.read(), "IntermediateMsg");
  KeyStatus status;
  try {
    status = session.finalize(IntermediateValue{incoming.value});
  } catch (const Error& e) {
    throw Error(ErrorCode::kProtocol, std::string("peer intermediate rejected: ") + e.what());
  }
  channel.write(CloseMsg{});
  expect<CloseMsg>(channel.read(), "Close");
  return PeerOutcome{*session.shared_key(), status, sent, IntermediateValue{incoming.value}};
}

}  // namespace

SocketStream::SocketStream(int fd) : fd_(fd) {}

SocketStream::SocketStream(SocketStream&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

SocketStream& SocketStream::operator=(SocketStream&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

SocketStream::~SocketStream() {
  if (fd_ >= 0) ::close(fd_);
}

std::size_t SocketStream::read_some(std::span<std::uint8_t> buffer) {
  for (;;) {
    const ssize_t n = ::recv(fd_, buffer.data(), buffer.size(), 0);
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    if (errno == EAGAIN || errno == EWOULDBLOCK) {
      throw Error(ErrorCode::kNetwork, "timed out waiting for peer");
    }
    throw_errno("recv");
  }
}

void SocketStream::write_all(std::span<const std::uint8_t> data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    data = data.subspan(static_cast<std::size_t>(n));
  }
}

void SocketStream::set_timeout(std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(ErrorCode::kParameter, "address must be host:port, got '" + std::string(text) + "'");
  }
  const std::string port_text(text.substr(colon + 1));
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(port_text, &used, 10);
    if (used != port_text.size() || port > 65535) throw std::out_of_range("port");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParameter, "invalid port '" + port_text + "'");
  }
  return Endpoint{std::string(text.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

SocketStream connect_tcp(const Endpoint& endpoint, std::chrono::milliseconds timeout) {
  const sockaddr_in addr = resolve(endpoint);
  const int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw_errno("socket");
  SocketStream stream(fd);
  stream.set_timeout(timeout);
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw_errno("connect to " + endpoint.to_string());
  }
  return stream;
}

TcpListener TcpListener::bind(const Endpoint& endpoint, int backlog) {
  const sockaddr_in addr = resolve(endpoint);
  const int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw_errno("socket");
  TcpListener listener(fd);
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw_errno("bind " + endpoint.to_string());
  }
  if (::listen(fd, backlog) != 0) throw_errno("listen");
  return listener;
}

TcpListener::TcpListener(TcpListener&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

Endpoint TcpListener::local_endpoint() const {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    throw_errno("getsockname");
  }
  std::array<char, INET_ADDRSTRLEN> host{};
  ::inet_ntop(AF_INET, &addr.sin_addr, host.data(), host.size());
  return Endpoint{host.data(), ntohs(addr.sin_port)};
}

SocketStream TcpListener::accept() {
  for (;;) {
    const int fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd >= 0) {
      SocketStream stream(fd);
      stream.set_timeout(kDefaultIoTimeout);
      return stream;
    }
    if (errno != EINTR) throw_errno("accept");
  }
}

Frame FramedChannel::read() {
  std::array<std::uint8_t, 4096> buffer{};
  for (;;) {
    if (std::optional<Frame> frame = reader_.next()) return std::move(*frame);
    const std::size_t n = stream_.read_some(buffer);
    if (n == 0) {
      throw Error(ErrorCode::kProtocol, reader_.buffered() > 0
                                            ? "connection closed inside a truncated frame"
                                            : "peer closed the connection");
    }
    reader_.feed(std::span<const std::uint8_t>(buffer.data(), n));
  }
}

void FramedChannel::write(const Frame& frame) { stream_.write_all(encode_frame(frame)); }

PeerOutcome run_initiator(ByteStream& stream, const KeyPair& local, const PeerOptions& options) {
  const DomainParams& params = local.public_key.params;
  check_expected(params, options);
  FramedChannel channel(stream);
  Session session = Session::start(Role::kInitiator, local);

  channel.write(ParamsOfferMsg{params.p(), params.g()});
  const auto peer = expect<PublicKeyMsg>(channel.read(), "PublicKeyMsg");
  channel.write(PublicKeyMsg{local.public_key.P, local.public_key.Q});
  return finish_exchange(channel, session, peer);
}

PeerOutcome run_responder(ByteStream& stream, const KeyPair& local, const PeerOptions& options) {
  FramedChannel channel(stream);
  Session session = Session::start(Role::kResponder, local);

  const DomainParams offered =
      accept_offer(expect<ParamsOfferMsg>(channel.read(), "ParamsOffer"));
  check_expected(offered, options);
  if (!(offered == local.public_key.params)) {
    throw Error(ErrorCode::kProtocol, "offered group differs from the local key's group");
  }
  channel.write(PublicKeyMsg{local.public_key.P, local.public_key.Q});
  const auto peer = expect<PublicKeyMsg>(channel.read(), "PublicKeyMsg");
  return finish_exchange(channel, session, peer);
}

}  // namespace qke
