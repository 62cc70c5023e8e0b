#include "qke/keys.hpp"

#include "qke/errors.hpp"

namespace qke {

PrivateKey PrivateKey::from_exponents(const DomainParams& params, BigUint x, BigUint y,
                                      BigUint z) {
  const BigUint& order = params.order();
  if (!(x < order) || !(y < order) || !(z < order)) {
    throw Error(ErrorCode::kValidation, "private exponents must lie in [0, p-2]");
  }
  BigUint w = mod_inv((x + y) % order, order);
  return PrivateKey(params, std::move(x), std::move(y), std::move(z), std::move(w));
}

PublicKey derive_public_key(const PrivateKey& key) {
  const DomainParams& params = key.params();
  const BigUint& order = params.order();
  return PublicKey{
      mod_exp(params.g(), (key.x() + key.z()) % order, params.p()),
      mod_exp(params.g(), (key.y() + key.z()) % order, params.p()),
      params,
  };
}

KeyPair generate_keypair(const DomainParams& params, RandomSource& rng) {
  BigUint x = sample_exponent(params, std::nullopt, rng);
  BigUint y = sample_exponent(params, x, rng);
  BigUint z = sample_exponent(params, std::nullopt, rng);
  PrivateKey priv = PrivateKey::from_exponents(params, std::move(x), std::move(y), std::move(z));
  PublicKey pub = derive_public_key(priv);
  return KeyPair{std::move(priv), std::move(pub)};
}

bool validate_public_key(const PublicKey& key) {
  const BigUint& p = key.params.p();
  const auto in_range = [&](const BigUint& v) { return !v.is_zero() && v < p; };
  return in_range(key.P) && in_range(key.Q);
}

}  // namespace qke
