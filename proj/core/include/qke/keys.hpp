#pragma once

#include "qke/biguint.hpp"
#include "qke/modmath.hpp"
#include "qke/random.hpp"

namespace qke {

/// Private key (x, y, z) with the cached finalization exponent
/// w = (x + y)^-1 mod (p - 1).  All exponents live in Z_{p-1}.
class PrivateKey {
 public:
  /// Throws kValidation if an exponent is >= p - 1, NotInvertibleError if
  /// x + y is not a unit mod p - 1.
  static PrivateKey from_exponents(const DomainParams& params, BigUint x, BigUint y,
                                   BigUint z);

  const BigUint& x() const { return x_; }
  const BigUint& y() const { return y_; }
  const BigUint& z() const { return z_; }
  const BigUint& w() const { return w_; }
  const DomainParams& params() const { return params_; }

  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;

 private:
  PrivateKey(DomainParams params, BigUint x, BigUint y, BigUint z, BigUint w)
      : params_(std::move(params)), x_(std::move(x)), y_(std::move(y)),
        z_(std::move(z)), w_(std::move(w)) {}

  DomainParams params_;
  BigUint x_;
  BigUint y_;
  BigUint z_;
  BigUint w_;
};

/// Public key (P, Q) = (g^(x+z), g^(y+z)) mod p.  Construction does not
/// validate; use validate_public_key() on anything received from outside.
struct PublicKey {
  BigUint P;
  BigUint Q;
  DomainParams params;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
  PrivateKey private_key;
  PublicKey public_key;
};

PublicKey derive_public_key(const PrivateKey& key);

/// Draws x and z uniformly from Z_{p-1}, then draws y until x + y is a unit.
/// The draw order is x, y (possibly repeated), z.
KeyPair generate_keypair(const DomainParams& params, RandomSource& rng);

/// Both residues in [1, p-1].
bool validate_public_key(const PublicKey& key);

}  // namespace qke
