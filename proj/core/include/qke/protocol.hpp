#pragma once

#include <optional>

#include "qke/keys.hpp"

namespace qke {

enum class Role { kInitiator, kResponder };

enum class SessionState { kFresh, kPeerKeySet, kIntermediateComputed, kEstablished };

const char* to_string(Role role) noexcept;
const char* to_string(SessionState state) noexcept;

/// The mid-protocol message g_ij^w_sender * g^z_receiver mod p.
struct IntermediateValue {
  BigUint value;

  friend bool operator==(const IntermediateValue&, const IntermediateValue&) = default;
};

enum class KeyStatus {
  kOk,
  /// The shared exponent collapsed to 0 mod (p - 1) and the key is 1.
  kDegenerate,
};

/// One side of a key establishment.
///
/// States only move forward: Fresh -> PeerKeySet -> IntermediateComputed ->
/// Established.  A call made in the wrong state throws kProtocolOrder and
/// leaves the session untouched; so does any other failed call.
class Session {
 public:
  static Session start(Role role, KeyPair local);

  /// Requires Fresh.  Throws kValidation for residues outside [1, p-1] and
  /// kParameter if the key belongs to a different group.
  void receive_peer_public(const PublicKey& peer);

  /// Requires PeerKeySet.  Returns (P_peer^x * Q_peer^y)^w mod p.
  IntermediateValue compute_intermediate();

  /// Requires IntermediateComputed.  Strips g^z from the peer's message and
  /// raises the rest to w; the result is the shared key.
  KeyStatus finalize(const IntermediateValue& incoming);

  Role role() const { return role_; }
  SessionState state() const { return state_; }
  const KeyPair& local() const { return local_; }
  const std::optional<PublicKey>& peer_public() const { return peer_public_; }
  const std::optional<IntermediateValue>& outgoing_intermediate() const { return outgoing_; }
  const std::optional<IntermediateValue>& incoming_intermediate() const { return incoming_; }
  /// Present iff state() == Established.
  const std::optional<BigUint>& shared_key() const { return shared_key_; }
  bool is_degenerate() const { return shared_key_ && *shared_key_ == BigUint(1); }

 private:
  Session(Role role, KeyPair local) : role_(role), local_(std::move(local)) {}

  void require_state(SessionState expected, const char* operation) const;

  Role role_;
  KeyPair local_;
  SessionState state_ = SessionState::kFresh;
  std::optional<PublicKey> peer_public_;
  std::optional<IntermediateValue> outgoing_;
  std::optional<IntermediateValue> incoming_;
  std::optional<BigUint> shared_key_;
};

/// Closed form of the established key computed from both private keys:
/// g^(w_a * w_b * (x_a*x_b + y_a*y_b) mod (p-1)) mod p.
BigUint expected_shared_key(const PrivateKey& a, const PrivateKey& b);

/// Next-generation key from two previously established keys, used as
/// exponents: g^k0 * g^k1 mod p.
BigUint ratchet_next_key(const DomainParams& params, const BigUint& k0, const BigUint& k1);

}  // namespace qke
