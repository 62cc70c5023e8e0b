#include "qke/baselines.hpp"

#include "qke/errors.hpp"

namespace qke {

namespace {

void require_residue(const BigUint& v, const BigUint& p, const char* what) {
  if (v.is_zero() || !(v < p)) {
    throw Error(ErrorCode::kValidation, std::string(what) + " must lie in [1, p-1]");
  }
}

}  // namespace

DhKeypair make_dh_keypair(const DomainParams& params, BigUint secret) {
  if (!(secret < params.order())) {
    throw Error(ErrorCode::kValidation, "DH secret must lie in [0, p-2]");
  }
  BigUint pub = mod_exp(params.g(), secret, params.p());
  return DhKeypair{std::move(secret), std::move(pub), params};
}

DhKeypair generate_dh_keypair(const DomainParams& params, RandomSource& rng) {
  return make_dh_keypair(params, sample_exponent(params, std::nullopt, rng));
}

BigUint dh_shared(const DhKeypair& local, const BigUint& peer_public) {
  require_residue(peer_public, local.params.p(), "peer public value");
  return mod_exp(peer_public, local.secret, local.params.p());
}

ElgamalCiphertext elgamal_encrypt(const BigUint& peer_public, const BigUint& message,
                                  const BigUint& ephemeral_exponent,
                                  const DomainParams& params) {
  const BigUint& p = params.p();
  require_residue(message, p, "message");
  require_residue(peer_public, p, "peer public value");
  const BigUint session_key = mod_exp(peer_public, ephemeral_exponent, p);
  return ElgamalCiphertext{mod_exp(params.g(), ephemeral_exponent, p),
                           mod_mul(message, session_key, p)};
}

BigUint elgamal_decrypt(const ElgamalCiphertext& ciphertext, const BigUint& secret,
                        const DomainParams& params) {
  const BigUint& p = params.p();
  require_residue(ciphertext.ephemeral, p, "ciphertext ephemeral");
  require_residue(ciphertext.body, p, "ciphertext body");
  const BigUint session_key = mod_exp(ciphertext.ephemeral, secret, p);
  return mod_mul(ciphertext.body, mod_inv(session_key, p), p);
}

}  // namespace qke
