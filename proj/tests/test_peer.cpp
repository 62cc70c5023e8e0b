#include <gtest/gtest.h>

#include <sys/socket.h>

#include <future>

#include "qke/errors.hpp"
#include "qke/peer.hpp"
#include "qke/wire.hpp"

namespace qke {
namespace {

std::pair<SocketStream, SocketStream> socket_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) throw std::runtime_error("socketpair");
  SocketStream a(fds[0]);
  SocketStream b(fds[1]);
  a.set_timeout(std::chrono::milliseconds(5000));
  b.set_timeout(std::chrono::milliseconds(5000));
  return {std::move(a), std::move(b)};
}

KeyPair pair_of(const DomainParams& params, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  PrivateKey key = PrivateKey::from_exponents(params, x, y, z);
  PublicKey pub = derive_public_key(key);
  return {std::move(key), std::move(pub)};
}

ErrorCode code_of(std::future<PeerOutcome>& f) {
  try {
    f.get();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

TEST(Peer, WorkedExchange) {
  const DomainParams params = DomainParams::create(23, 5);
  auto [s1, s2] = socket_pair();
  const KeyPair alice = pair_of(params, 3, 6, 4);
  const KeyPair bob = pair_of(params, 7, 8, 2);
  auto responder = std::async(std::launch::async, [&] {
    return run_responder(s2, bob, {params});
  });
  const PeerOutcome a = run_initiator(s1, alice);
  const PeerOutcome b = responder.get();
  EXPECT_EQ(a.shared_key, BigUint(5));
  EXPECT_EQ(b.shared_key, BigUint(5));
  EXPECT_EQ(a.sent.value, BigUint(15));
  EXPECT_EQ(a.received.value, BigUint(21));
  EXPECT_EQ(b.sent, a.received);
}

TEST(Peer, RandomGroupsOverTcp) {
  SeededRandom rng(64);
  TcpListener listener = TcpListener::bind(Endpoint::parse("127.0.0.1:0"));
  const Endpoint ep = listener.local_endpoint();
  EXPECT_NE(ep.port, 0);
  for (int i = 0; i < 10; ++i) {
    const DomainParams params = generate_domain_params(64, rng);
    const KeyPair alice = generate_keypair(params, rng);
    const KeyPair bob = generate_keypair(params, rng);
    auto responder = std::async(std::launch::async, [&] {
      SocketStream s = listener.accept();
      return run_responder(s, bob);
    });
    SocketStream s = connect_tcp(ep);
    const PeerOutcome a = run_initiator(s, alice);
    const PeerOutcome b = responder.get();
    ASSERT_EQ(a.shared_key, b.shared_key);
    ASSERT_EQ(a.shared_key, expected_shared_key(alice.private_key, bob.private_key));
  }
}

TEST(Peer, ResponderRejectsForeignGroup) {
  const DomainParams params = DomainParams::create(23, 5);
  const DomainParams other = DomainParams::create(47, 5);
  auto [s1, s2] = socket_pair();
  auto responder = std::async(std::launch::async, [&, &s2 = s2] {
    return run_responder(s2, pair_of(params, 7, 8, 2));
  });
  auto initiator = std::async(std::launch::async, [&, &s1 = s1] {
    return run_initiator(s1, pair_of(other, 3, 6, 4));
  });
  EXPECT_EQ(code_of(responder), ErrorCode::kProtocol);
  s2 = SocketStream(-1);
  EXPECT_EQ(code_of(initiator), ErrorCode::kProtocol);
}

TEST(Peer, ResponderRejectsNonSafeOffer) {
  auto [s1, s2] = socket_pair();
  const DomainParams params = DomainParams::create(23, 5);
  auto responder = std::async(std::launch::async, [&, &s2 = s2] {
    return run_responder(s2, pair_of(params, 7, 8, 2));
  });
  FramedChannel ch(s1);
  ch.write(ParamsOfferMsg{29, 2});
  EXPECT_EQ(code_of(responder), ErrorCode::kProtocol);
}

TEST(Peer, MalformedFramesSurfaceCodecErrors) {
  const DomainParams params = DomainParams::create(23, 5);
  {
    auto [s1, s2] = socket_pair();
    const std::vector<std::uint8_t> junk = {'X', 'K', 'E', '1', 1, 0, 0, 0, 0};
    s1.write_all(junk);
    try {
      run_responder(s2, pair_of(params, 7, 8, 2));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kFormat);
    }
  }
  {
    auto [s1, s2] = socket_pair();
    const std::vector<std::uint8_t> truncated = {'Q', 'K', 'E', '1', 1, 0, 0, 0, 10, 0};
    s1.write_all(truncated);
    s1 = SocketStream(-1);
    try {
      run_responder(s2, pair_of(params, 7, 8, 2));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kProtocol);
    }
  }
  {
    auto [s1, s2] = socket_pair();
    FramedChannel ch(s1);
    ch.write(IntermediateMsg{15});
    try {
      run_responder(s2, pair_of(params, 7, 8, 2));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kProtocol);
    }
  }
}

TEST(Peer, ConnectToClosedPortIsNetworkError) {
  Endpoint ep;
  {
    TcpListener l = TcpListener::bind(Endpoint::parse("127.0.0.1:0"));
    ep = l.local_endpoint();
  }
  try {
    connect_tcp(ep, std::chrono::milliseconds(2000));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNetwork);
  }
}

TEST(Peer, EndpointParsing) {
  const Endpoint ep = Endpoint::parse("127.0.0.1:4000");
  EXPECT_EQ(ep.host, "127.0.0.1");
  EXPECT_EQ(ep.port, 4000);
  EXPECT_EQ(ep.to_string(), "127.0.0.1:4000");
  EXPECT_THROW(Endpoint::parse("nohost"), Error);
  EXPECT_THROW(Endpoint::parse("h:99999"), Error);
  EXPECT_THROW(Endpoint::parse("h:"), Error);
}

}  // namespace
}  // namespace qke
