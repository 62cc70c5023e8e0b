#pragma once

#include <optional>
#include <string>

#include "qke/biguint.hpp"
#include "qke/random.hpp"

namespace qke {

inline constexpr int kDefaultPrimalityRounds = 40;

/// A safe prime p = 2q + 1 without a chosen generator.
struct SafePrime {
  BigUint p;
  BigUint q;
};

/// Public group parameters: safe prime p, q = (p-1)/2, and a primitive root g.
///
/// Instances can only be obtained through create(), which checks every
/// invariant, so holding a DomainParams means the group is usable.
class DomainParams {
 public:
  /// Throws kParameter unless p is a safe prime and g a primitive root in
  /// [2, p-2].
  static DomainParams create(const BigUint& p, const BigUint& g,
                             std::string label = {});

  const BigUint& p() const { return p_; }
  const BigUint& q() const { return q_; }
  const BigUint& g() const { return g_; }
  /// Order of the multiplicative group, p - 1.  Exponents live in Z_order.
  const BigUint& order() const { return order_; }
  const std::string& label() const { return label_; }
  SafePrime safe_prime() const { return {p_, q_}; }

  /// Labels are descriptive only and do not take part in equality.
  friend bool operator==(const DomainParams& a, const DomainParams& b) {
    return a.p_ == b.p_ && a.g_ == b.g_;
  }

 private:
  DomainParams() = default;

  BigUint p_;
  BigUint q_;
  BigUint g_;
  BigUint order_;
  std::string label_;
};

/// base^exponent mod modulus by left-to-right square-and-multiply.
/// Throws kParameter if modulus < 2.
BigUint mod_exp(const BigUint& base, const BigUint& exponent, const BigUint& modulus);

/// (a * b) mod modulus.
BigUint mod_mul(const BigUint& a, const BigUint& b, const BigUint& modulus);

/// Inverse of a modulo `modulus` via the extended Euclidean algorithm.
/// Throws NotInvertibleError (carrying the gcd) when gcd(a, modulus) != 1 and
/// kParameter when modulus < 2.
BigUint mod_inv(const BigUint& a, const BigUint& modulus);

/// Trial division below 2^16, Miller-Rabin above.  The first bases are the
/// first twelve primes, which is a deterministic test for n < 3.3e24; larger
/// n get the remaining rounds from random bases.
bool is_probable_prime(const BigUint& n, int rounds = kDefaultPrimalityRounds);

/// Returns a safe prime of exactly `bits` bits.  bits must be >= 5.
SafePrime generate_safe_prime(std::size_t bits, RandomSource& rng);

/// True iff g has order p - 1, i.e. g^2 != 1 and g^q != 1 (mod p).
/// Throws kParameter if g is outside [2, p-2].
bool validate_primitive_root(const BigUint& g, const SafePrime& group);
bool validate_primitive_root(const BigUint& g, const DomainParams& params);

/// Smallest primitive root of a safe prime.
BigUint find_primitive_root(const SafePrime& group);

/// Safe prime of `bits` bits with its smallest primitive root.
DomainParams generate_domain_params(std::size_t bits, RandomSource& rng);

/// Uniform exponent in [0, p-2].  With `unit_sum_with` = s, resamples until
/// (value + s) mod (p-1) is a unit of Z_{p-1}.
BigUint sample_exponent(const DomainParams& params,
                        const std::optional<BigUint>& unit_sum_with,
                        RandomSource& rng);

}  // namespace qke
