#include "qke/biguint.hpp"

#include <ostream>

#include "qke/errors.hpp"

namespace qke {

namespace {

bool all_of_base(std::string_view s, int base) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool dec = c >= '0' && c <= '9';
    const bool hex = (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    if (!(dec || (base == 16 && hex))) return false;
  }
  return true;
}

}  // namespace

BigUint::BigUint(std::uint64_t v) {
  mpz_import(value_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

BigUint BigUint::from_mpz(mpz_class v) {
  if (sgn(v) < 0) {
    throw Error(ErrorCode::kParameter, "negative value for unsigned integer");
  }
  BigUint out;
  out.value_ = std::move(v);
  return out;
}

BigUint BigUint::from_hex(std::string_view hex) {
  if (!all_of_base(hex, 16)) {
    throw Error(ErrorCode::kFormat, "invalid hexadecimal integer '" + std::string(hex) + "'");
  }
  BigUint out;
  out.value_.set_str(std::string(hex), 16);
  return out;
}

BigUint BigUint::from_dec(std::string_view dec) {
  if (!all_of_base(dec, 10)) {
    throw Error(ErrorCode::kFormat, "invalid decimal integer '" + std::string(dec) + "'");
  }
  BigUint out;
  out.value_.set_str(std::string(dec), 10);
  return out;
}

BigUint BigUint::from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigUint out;
  if (!bytes.empty()) {
    mpz_import(out.value_.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return out;
}

std::string BigUint::to_hex() const { return value_.get_str(16); }

std::string BigUint::to_dec() const { return value_.get_str(10); }

std::vector<std::uint8_t> BigUint::to_bytes_be() const {
  std::vector<std::uint8_t> out(byte_length());
  if (!out.empty()) {
    std::size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, value_.get_mpz_t());
    out.resize(written);
  }
  return out;
}

std::size_t BigUint::bit_length() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

bool BigUint::test_bit(std::size_t i) const {
  return mpz_tstbit(value_.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0;
}

std::uint64_t BigUint::to_u64() const {
  if (!fits_u64()) {
    throw Error(ErrorCode::kWidth, "integer does not fit in 64 bits");
  }
  std::uint64_t v = 0;
  std::size_t count = 0;
  mpz_export(&v, &count, -1, sizeof(v), 0, 0, value_.get_mpz_t());
  return count == 0 ? 0 : v;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
  value_ += rhs.value_;
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
  if (*this < rhs) {
    throw Error(ErrorCode::kParameter, "unsigned subtraction underflow");
  }
  value_ -= rhs.value_;
  return *this;
}

BigUint& BigUint::operator*=(const BigUint& rhs) {
  value_ *= rhs.value_;
  return *this;
}

BigUint& BigUint::operator/=(const BigUint& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::kParameter, "division by zero");
  mpz_tdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigUint& BigUint::operator%=(const BigUint& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::kParameter, "modulo by zero");
  mpz_tdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigUint& BigUint::operator<<=(std::size_t bits) {
  mpz_mul_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

BigUint& BigUint::operator>>=(std::size_t bits) {
  mpz_tdiv_q_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

BigUint gcd(const BigUint& a, const BigUint& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return BigUint::from_mpz(std::move(g));
}

std::ostream& operator<<(std::ostream& os, const BigUint& v) {
  return os << v.to_dec();
}

}  // namespace qke
