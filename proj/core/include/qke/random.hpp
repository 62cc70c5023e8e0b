#pragma once

#include <cstdint>
#include <deque>
#include <initializer_list>
#include <random>

#include "qke/biguint.hpp"

namespace qke {

/// Caller-owned source of randomness.  Every randomized operation in the
/// library draws through this interface so that callers can choose between
/// the OS entropy pool, a reproducible seeded stream, or a scripted sequence.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual std::uint64_t next_u64() = 0;

  /// Uniform value in [0, bound).  The default implementation rejection
  /// samples on next_u64() output.  bound must be nonzero.
  virtual BigUint uniform_below(const BigUint& bound);

  /// Uniform value with at most `bits` bits.
  BigUint random_bits(std::size_t bits);
};

/// Reads std::random_device (the kernel pool on Linux).
class SystemRandom final : public RandomSource {
 public:
  std::uint64_t next_u64() override;

 private:
  std::random_device device_;
};

/// Reproducible stream for --seed runs and tests.  Not for production keys.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next_u64() override { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed list of values from uniform_below(); used to inject exact
/// exponents.  Throws kParameter once exhausted or if a scripted value is not
/// below the requested bound.
class ScriptedRandom final : public RandomSource {
 public:
  ScriptedRandom(std::initializer_list<BigUint> values) : values_(values) {}
  template <typename It>
  ScriptedRandom(It first, It last) : values_(first, last) {}

  std::uint64_t next_u64() override;
  BigUint uniform_below(const BigUint& bound) override;

  std::size_t remaining() const { return values_.size(); }
  std::size_t draws() const { return draws_; }

 private:
  std::deque<BigUint> values_;
  std::size_t draws_ = 0;
};

}  // namespace qke
