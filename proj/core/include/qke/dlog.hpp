#pragma once

#include <cstdint>
#include <vector>

#include "qke/biguint.hpp"
#include "qke/modmath.hpp"

namespace qke {

/// Largest modulus, in bits, the discrete-log oracle accepts.
inline constexpr std::size_t kMaxDlogBits = 40;

/// Baby-step giant-step discrete logarithm to the group generator.
///
/// The baby-step table is built once in the constructor and reused by every
/// solve() call, so a solver should be shared across queries on one group.
/// The default table holds ceil(sqrt(p-1)) entries; callers issuing many
/// queries may pass a larger count to trade memory for fewer giant steps.
/// Arithmetic is Montgomery-form 64-bit, hence the size cap.
class DlogSolver {
 public:
  /// Throws kScale if p has more than kMaxDlogBits bits.
  explicit DlogSolver(const DomainParams& params, std::uint64_t baby_steps = 0);

  /// e in [0, p-2] with g^e = target (mod p).  Throws kValidation unless
  /// target lies in [1, p-1].
  std::uint64_t solve(std::uint64_t target) const;
  std::uint64_t solve(const BigUint& target) const;

  std::uint64_t modulus() const { return p_; }
  std::uint64_t baby_steps() const { return m_; }

 private:
  std::uint64_t to_mont(std::uint64_t a) const;
  std::uint64_t mont_mul(std::uint64_t a, std::uint64_t b) const;
  std::size_t slot(std::uint64_t key) const;

  std::uint64_t p_ = 0;
  std::uint64_t order_ = 0;
  std::uint64_t m_ = 0;
  std::uint64_t p_neg_inv_ = 0;   // -p^-1 mod 2^64
  std::uint64_t r2_ = 0;          // 2^128 mod p
  std::uint64_t giant_ = 0;       // g^-m, Montgomery form
  unsigned shift_ = 0;
  std::uint64_t mask_ = 0;
  std::vector<std::uint64_t> keys_;    // Montgomery g^j, 0 = empty
  std::vector<std::uint32_t> values_;  // j
};

/// One-shot convenience wrapper around DlogSolver.
std::uint64_t discrete_log(const BigUint& target, const DomainParams& params);

}  // namespace qke
