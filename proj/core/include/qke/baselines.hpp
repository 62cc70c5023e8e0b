#pragma once

#include "qke/biguint.hpp"
#include "qke/modmath.hpp"
#include "qke/random.hpp"

// Classic Diffie-Hellman and multiplicative ElGamal over the same groups,
// kept as reference points for tests and the demo subcommand.

namespace qke {

struct DhKeypair {
  BigUint secret;
  BigUint public_value;  // g^secret mod p
  DomainParams params;
};

/// Throws kValidation if secret >= p - 1.
DhKeypair make_dh_keypair(const DomainParams& params, BigUint secret);
DhKeypair generate_dh_keypair(const DomainParams& params, RandomSource& rng);

/// peer_public^secret mod p.  Throws kValidation unless peer_public is in [1, p-1].
BigUint dh_shared(const DhKeypair& local, const BigUint& peer_public);

struct ElgamalCiphertext {
  BigUint ephemeral;  // g^y mod p
  BigUint body;       // m * peer_public^y mod p

  friend bool operator==(const ElgamalCiphertext&, const ElgamalCiphertext&) = default;
};

ElgamalCiphertext elgamal_encrypt(const BigUint& peer_public, const BigUint& message,
                                  const BigUint& ephemeral_exponent,
                                  const DomainParams& params);

BigUint elgamal_decrypt(const ElgamalCiphertext& ciphertext, const BigUint& secret,
                        const DomainParams& params);

}  // namespace qke
