#include "qke/protocol.hpp"

#include <string>

#include "qke/errors.hpp"

namespace qke {

const char* to_string(Role role) noexcept {
  return role == Role::kInitiator ? "initiator" : "responder";
}

const char* to_string(SessionState state) noexcept {
  switch (state) {
    case SessionState::kFresh: return "Fresh";
    case SessionState::kPeerKeySet: return "PeerKeySet";
    case SessionState::kIntermediateComputed: return "IntermediateComputed";
    case SessionState::kEstablished: return "Established";
  }
  return "?";
}

Session Session::start(Role role, KeyPair local) { return Session(role, std::move(local)); }

void Session::require_state(SessionState expected, const char* operation) const {
  if (state_ != expected) {
    throw Error(ErrorCode::kProtocolOrder, std::string(operation) + " requires state " +
                                               to_string(expected) + ", session is " +
                                               to_string(state_));
  }
}

void Session::receive_peer_public(const PublicKey& peer) {
  require_state(SessionState::kFresh, "receive_peer_public");
  if (!validate_public_key(peer)) {
    throw Error(ErrorCode::kValidation, "peer public key residues must lie in [1, p-1]");
  }
  if (!(peer.params == local_.public_key.params)) {
    throw Error(ErrorCode::kParameter, "peer public key uses different domain parameters");
  }
  peer_public_ = peer;
  state_ = SessionState::kPeerKeySet;
}

IntermediateValue Session::compute_intermediate() {
  require_state(SessionState::kPeerKeySet, "compute_intermediate");
  const PrivateKey& key = local_.private_key;
  const BigUint& p = key.params().p();
  const BigUint combined = mod_mul(mod_exp(peer_public_->P, key.x(), p),
                                   mod_exp(peer_public_->Q, key.y(), p), p);
  outgoing_ = IntermediateValue{mod_exp(combined, key.w(), p)};
  state_ = SessionState::kIntermediateComputed;
  return *outgoing_;
}

KeyStatus Session::finalize(const IntermediateValue& incoming) {
  require_state(SessionState::kIntermediateComputed, "finalize");
  const PrivateKey& key = local_.private_key;
  const DomainParams& params = key.params();
  const BigUint& p = params.p();
  if (incoming.value.is_zero() || !(incoming.value < p)) {
    throw Error(ErrorCode::kValidation, "intermediate value must lie in [1, p-1]");
  }
  const BigUint blind_inverse = mod_inv(mod_exp(params.g(), key.z(), p), p);
  shared_key_ = mod_exp(mod_mul(incoming.value, blind_inverse, p), key.w(), p);
  incoming_ = incoming;
  state_ = SessionState::kEstablished;
  return is_degenerate() ? KeyStatus::kDegenerate : KeyStatus::kOk;
}

BigUint expected_shared_key(const PrivateKey& a, const PrivateKey& b) {
  const DomainParams& params = a.params();
  const BigUint& order = params.order();
  const BigUint cross = (a.x() * b.x() + a.y() * b.y()) % order;
  const BigUint exponent = (a.w() * b.w() % order) * cross % order;
  return mod_exp(params.g(), exponent, params.p());
}

BigUint ratchet_next_key(const DomainParams& params, const BigUint& k0, const BigUint& k1) {
  const BigUint& p = params.p();
  return mod_mul(mod_exp(params.g(), k0, p), mod_exp(params.g(), k1, p), p);
}

}  // namespace qke
