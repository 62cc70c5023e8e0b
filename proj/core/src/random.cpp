#include "qke/random.hpp"

#include "qke/errors.hpp"

namespace qke {

BigUint RandomSource::random_bits(std::size_t bits) {
  BigUint out;
  std::size_t have = 0;
  while (have < bits) {
    const std::size_t take = std::min<std::size_t>(64, bits - have);
    std::uint64_t word = next_u64();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    out <<= take;
    out += BigUint(word);
    have += take;
  }
  return out;
}

BigUint RandomSource::uniform_below(const BigUint& bound) {
  if (bound.is_zero()) {
    throw Error(ErrorCode::kParameter, "uniform_below: bound must be nonzero");
  }
  const std::size_t bits = bound.bit_length();
  for (;;) {
    BigUint candidate = random_bits(bits);
    if (candidate < bound) return candidate;
  }
}

std::uint64_t SystemRandom::next_u64() {
  static_assert(sizeof(std::random_device::result_type) == 4);
  const std::uint64_t hi = device_();
  const std::uint64_t lo = device_();
  return (hi << 32) | lo;
}

std::uint64_t ScriptedRandom::next_u64() {
  return uniform_below(BigUint(~std::uint64_t{0})).to_u64();
}

BigUint ScriptedRandom::uniform_below(const BigUint& bound) {
  if (values_.empty()) {
    throw Error(ErrorCode::kParameter, "scripted random source exhausted");
  }
  BigUint v = std::move(values_.front());
  values_.pop_front();
  ++draws_;
  if (!(v < bound)) {
    throw Error(ErrorCode::kParameter,
                "scripted value " + v.to_dec() + " is not below " + bound.to_dec());
  }
  return v;
}

}  // namespace qke
