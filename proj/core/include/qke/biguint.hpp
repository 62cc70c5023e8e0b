#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qke {

/// Arbitrary-precision unsigned integer.
///
/// A thin value type over GMP's mpz_class that never goes negative:
/// subtraction of a larger value from a smaller one throws.  Equality and
/// ordering are value-based.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  static BigUint from_hex(std::string_view hex);
  static BigUint from_dec(std::string_view dec);
  /// Big-endian magnitude; leading zero octets are accepted.
  static BigUint from_bytes_be(std::span<const std::uint8_t> bytes);
  /// Throws if `v` is negative.
  static BigUint from_mpz(mpz_class v);

  /// Lowercase, no prefix, no leading zeros; zero renders as "0".
  std::string to_hex() const;
  std::string to_dec() const;
  /// Minimal big-endian magnitude; zero yields an empty vector.
  std::vector<std::uint8_t> to_bytes_be() const;

  std::size_t bit_length() const;
  std::size_t byte_length() const { return (bit_length() + 7) / 8; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_odd() const { return mpz_odd_p(value_.get_mpz_t()) != 0; }
  bool test_bit(std::size_t i) const;
  bool fits_u64() const { return bit_length() <= 64; }
  std::uint64_t to_u64() const;

  BigUint& operator+=(const BigUint& rhs);
  BigUint& operator-=(const BigUint& rhs);
  BigUint& operator*=(const BigUint& rhs);
  BigUint& operator/=(const BigUint& rhs);
  BigUint& operator%=(const BigUint& rhs);
  BigUint& operator<<=(std::size_t bits);
  BigUint& operator>>=(std::size_t bits);

  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
  friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }
  friend BigUint operator/(BigUint a, const BigUint& b) { return a /= b; }
  friend BigUint operator%(BigUint a, const BigUint& b) { return a %= b; }
  friend BigUint operator<<(BigUint a, std::size_t n) { return a <<= n; }
  friend BigUint operator>>(BigUint a, std::size_t n) { return a >>= n; }

  friend bool operator==(const BigUint& a, const BigUint& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  const mpz_class& mpz() const { return value_; }

 private:
  mpz_class value_;
};

BigUint gcd(const BigUint& a, const BigUint& b);

std::ostream& operator<<(std::ostream& os, const BigUint& v);

}  // namespace qke
