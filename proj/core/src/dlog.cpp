#include "qke/dlog.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qke/errors.hpp"

namespace qke {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kHashMultiplier = 0x9E3779B97F4A7C15ull;
// Sparse tables keep probe chains short; past this size density takes over.
constexpr std::size_t kSparseFactor = 16;
constexpr std::size_t kMaxSparseSlots = std::size_t{1} << 22;

std::uint64_t isqrt_ceil(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while (r * r < n) ++r;
  return r;
}

}  // namespace

DlogSolver::DlogSolver(const DomainParams& params, std::uint64_t baby_steps) {
  if (params.p().bit_length() > kMaxDlogBits) {
    throw Error(ErrorCode::kScale, "discrete log oracle is capped at p < 2^" +
                                       std::to_string(kMaxDlogBits) + "; p has " +
                                       std::to_string(params.p().bit_length()) + " bits");
  }
  p_ = params.p().to_u64();
  order_ = p_ - 1;
  m_ = baby_steps == 0 ? isqrt_ceil(order_) : std::min(baby_steps, order_);

  std::uint64_t inv = p_;  // Newton iteration for p^-1 mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - p_ * inv;
  p_neg_inv_ = ~inv + 1;
  const std::uint64_t r1 = static_cast<std::uint64_t>((u128{1} << 64) % p_);
  r2_ = static_cast<std::uint64_t>(u128{r1} * r1 % p_);

  const std::size_t min_slots = std::bit_ceil(static_cast<std::size_t>(m_) * 2);
  const std::size_t slots =
      std::max(min_slots, std::min(std::bit_ceil(static_cast<std::size_t>(m_) * kSparseFactor),
                                   kMaxSparseSlots));
  mask_ = slots - 1;
  shift_ = 64 - static_cast<unsigned>(std::countr_zero(slots));
  keys_.assign(slots, 0);
  values_.assign(slots, 0);

  const std::uint64_t g = to_mont(params.g().to_u64());
  std::uint64_t current = to_mont(1);
  for (std::uint64_t j = 0; j < m_; ++j) {
    std::size_t h = slot(current);
    while (keys_[h] != 0) h = (h + 1) & mask_;
    keys_[h] = current;
    values_[h] = static_cast<std::uint32_t>(j);
    current = mont_mul(current, g);
  }
  // g^-m = g^(order - m); order - m is in [0, order).
  const std::uint64_t g_inv_m =
      mod_exp(params.g(), BigUint(order_ - m_), params.p()).to_u64();
  giant_ = to_mont(g_inv_m);
}

std::uint64_t DlogSolver::to_mont(std::uint64_t a) const { return mont_mul(a, r2_); }

std::uint64_t DlogSolver::mont_mul(std::uint64_t a, std::uint64_t b) const {
  const u128 t = u128{a} * b;
  const std::uint64_t k = static_cast<std::uint64_t>(t) * p_neg_inv_;
  const u128 sum = t + u128{k} * p_;
  // p < 2^40 keeps t + k*p below 2^105, so the sum cannot overflow.
  const auto r = static_cast<std::uint64_t>(sum >> 64);
  return r >= p_ ? r - p_ : r;
}

std::size_t DlogSolver::slot(std::uint64_t key) const {
  return static_cast<std::size_t>((key * kHashMultiplier) >> shift_);
}

std::uint64_t DlogSolver::solve(std::uint64_t target) const {
  if (target == 0 || target >= p_) {
    throw Error(ErrorCode::kValidation, "discrete log target must lie in [1, p-1]");
  }
  std::uint64_t gamma = to_mont(target);
  const std::uint64_t giant_steps = order_ / m_ + 1;
  for (std::uint64_t i = 0; i <= giant_steps; ++i) {
    for (std::size_t h = slot(gamma); keys_[h] != 0; h = (h + 1) & mask_) {
      if (keys_[h] == gamma) return (i * m_ + values_[h]) % order_;
    }
    gamma = mont_mul(gamma, giant_);
  }
  throw Error(ErrorCode::kParameter, "discrete log not found; generator is not primitive");
}

std::uint64_t DlogSolver::solve(const BigUint& target) const {
  if (!target.fits_u64()) {
    throw Error(ErrorCode::kValidation, "discrete log target must lie in [1, p-1]");
  }
  return solve(target.to_u64());
}

std::uint64_t discrete_log(const BigUint& target, const DomainParams& params) {
  return DlogSolver(params).solve(target);
}

}  // namespace qke
