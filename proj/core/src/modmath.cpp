#include "qke/modmath.hpp"

#include <array>
#include <random>
#include <vector>

#include "qke/errors.hpp"

namespace qke {

namespace {

constexpr std::array<std::uint32_t, 12> kFixedBases = {2, 3, 5, 7, 11, 13,
                                                       17, 19, 23, 29, 31, 37};

// Above this bound the twelve fixed bases no longer form a proof.
const mpz_class& deterministic_bound() {
  static const mpz_class bound("3317044064679887385961981", 10);
  return bound;
}

// Odd primes 5 <= l < 2048, used to sieve safe-prime candidates.
const std::vector<std::uint32_t>& sieve_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t kLimit = 2048;
    std::vector<bool> composite(kLimit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kLimit; ++i) {
      if (composite[i]) continue;
      if (i >= 5) out.push_back(i);
      for (std::uint32_t j = i * i; j < kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

void mulmod(mpz_class& out, const mpz_class& a, const mpz_class& b, const mpz_class& m) {
  mpz_mul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_tdiv_r(out.get_mpz_t(), out.get_mpz_t(), m.get_mpz_t());
}

mpz_class powmod(const mpz_class& base, const mpz_class& exponent, const mpz_class& m) {
  mpz_class b;
  mpz_tdiv_r(b.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t());
  mpz_class result = 1;
  mpz_class tmp;
  const std::size_t bits = sgn(exponent) == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    mulmod(tmp, result, result, m);
    result.swap(tmp);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) {
      mulmod(tmp, result, b, m);
      result.swap(tmp);
    }
  }
  if (m == 1) result = 0;
  return result;
}

bool trial_division_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// One Miller-Rabin round; n odd and > 3, n - 1 = d * 2^s.
bool miller_rabin_round(const mpz_class& n, const mpz_class& n_minus_1,
                        const mpz_class& d, std::size_t s, const mpz_class& base) {
  mpz_class x = powmod(base, d, n);
  if (x == 1 || x == n_minus_1) return true;
  mpz_class tmp;
  for (std::size_t r = 1; r < s; ++r) {
    mulmod(tmp, x, x, n);
    x.swap(tmp);
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

struct MrSetup {
  mpz_class n_minus_1;
  mpz_class d;
  std::size_t s = 0;
};

MrSetup mr_setup(const mpz_class& n) {
  MrSetup out;
  out.n_minus_1 = n - 1;
  out.s = mpz_scan1(out.n_minus_1.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(out.d.get_mpz_t(), out.n_minus_1.get_mpz_t(), out.s);
  return out;
}

std::mt19937_64& base_engine() {
  thread_local std::mt19937_64 engine{std::random_device{}()};
  return engine;
}

bool passes_base_two(const mpz_class& n) {
  const MrSetup setup = mr_setup(n);
  return miller_rabin_round(n, setup.n_minus_1, setup.d, setup.s, 2);
}

BigUint top_bit(std::size_t bits) { return BigUint(1) << (bits - 1); }

}  // namespace

DomainParams DomainParams::create(const BigUint& p, const BigUint& g, std::string label) {
  if (p < BigUint(5) || !p.is_odd() || !is_probable_prime(p)) {
    throw Error(ErrorCode::kParameter, "modulus p=" + p.to_dec() + " is not an odd prime");
  }
  const BigUint q = (p - 1) >> 1;
  if (!is_probable_prime(q)) {
    throw Error(ErrorCode::kParameter,
                "modulus p=" + p.to_dec() + " is not a safe prime ((p-1)/2 is composite)");
  }
  const SafePrime group{p, q};
  if (!validate_primitive_root(g, group)) {
    throw Error(ErrorCode::kParameter,
                "g=" + g.to_dec() + " is not a primitive root modulo p=" + p.to_dec());
  }
  DomainParams out;
  out.p_ = p;
  out.q_ = q;
  out.g_ = g;
  out.order_ = p - 1;
  out.label_ = std::move(label);
  return out;
}

BigUint mod_exp(const BigUint& base, const BigUint& exponent, const BigUint& modulus) {
  if (modulus < BigUint(2)) {
    throw Error(ErrorCode::kParameter, "mod_exp: modulus must be >= 2");
  }
  return BigUint::from_mpz(powmod(base.mpz(), exponent.mpz(), modulus.mpz()));
}

BigUint mod_mul(const BigUint& a, const BigUint& b, const BigUint& modulus) {
  if (modulus.is_zero()) throw Error(ErrorCode::kParameter, "mod_mul: zero modulus");
  mpz_class out;
  mulmod(out, a.mpz(), b.mpz(), modulus.mpz());
  return BigUint::from_mpz(std::move(out));
}

BigUint mod_inv(const BigUint& a, const BigUint& modulus) {
  if (modulus < BigUint(2)) {
    throw Error(ErrorCode::kParameter, "mod_inv: modulus must be >= 2");
  }
  // Invariant: old_r = old_s * a (mod m), r = s * a (mod m).
  mpz_class old_r = a.mpz() % modulus.mpz();
  mpz_class r = modulus.mpz();
  mpz_class old_s = 1;
  mpz_class s = 0;
  mpz_class quotient;
  mpz_class tmp;
  while (r != 0) {
    mpz_tdiv_q(quotient.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    tmp = old_r - quotient * r;
    old_r.swap(r);
    r.swap(tmp);
    tmp = old_s - quotient * s;
    old_s.swap(s);
    s.swap(tmp);
  }
  if (old_r != 1) throw NotInvertibleError(BigUint::from_mpz(old_r));
  mpz_class inv;
  mpz_mod(inv.get_mpz_t(), old_s.get_mpz_t(), modulus.mpz().get_mpz_t());
  return BigUint::from_mpz(std::move(inv));
}

bool is_probable_prime(const BigUint& n, int rounds) {
  if (rounds < 1) throw Error(ErrorCode::kParameter, "is_probable_prime: rounds must be >= 1");
  if (n.bit_length() <= 16) {
    return trial_division_prime(static_cast<std::uint32_t>(n.to_u64()));
  }
  if (!n.is_odd()) return false;
  const mpz_class& value = n.mpz();
  for (std::uint32_t l : sieve_primes()) {
    if (mpz_divisible_ui_p(value.get_mpz_t(), l)) return false;
  }
  if (mpz_divisible_ui_p(value.get_mpz_t(), 3)) return false;

  const MrSetup setup = mr_setup(value);
  const int fixed = std::min<int>(rounds, static_cast<int>(kFixedBases.size()));
  for (int i = 0; i < fixed; ++i) {
    if (!miller_rabin_round(value, setup.n_minus_1, setup.d, setup.s, kFixedBases[i])) {
      return false;
    }
  }
  if (fixed == static_cast<int>(kFixedBases.size()) && value < deterministic_bound()) {
    return true;
  }
  // Random bases in [2, n-2].
  const mpz_class span = value - 3;
  gmp_randclass state(gmp_randinit_default);
  state.seed(static_cast<unsigned long>(base_engine()()));
  for (int i = fixed; i < rounds; ++i) {
    const mpz_class base = state.get_z_range(span) + 2;
    if (!miller_rabin_round(value, setup.n_minus_1, setup.d, setup.s, base)) return false;
  }
  return true;
}

SafePrime generate_safe_prime(std::size_t bits, RandomSource& rng) {
  if (bits < 5) {
    throw Error(ErrorCode::kParameter, "generate_safe_prime: bits must be >= 5");
  }
  const BigUint low = top_bit(bits);
  const BigUint high = low << 1;  // exclusive

  if (bits <= 20) {
    const BigUint span = low;
    for (;;) {
      BigUint p = low + rng.uniform_below(span);
      if (!p.is_odd()) continue;
      BigUint q = (p - 1) >> 1;
      if (is_probable_prime(q) && is_probable_prime(p)) return {std::move(p), std::move(q)};
    }
  }

  // Every safe prime above 7 is 11 mod 12.  Walk candidates in steps of 12
  // from a random start, sieving both p and q = (p-1)/2 with small primes
  // (l | p iff p = 0 mod l; l | q iff p = 1 mod l).
  const auto& primes = sieve_primes();
  std::vector<std::uint32_t> residues(primes.size());
  constexpr std::size_t kWalk = 1u << 14;
  for (;;) {
    BigUint start = low + rng.uniform_below(low);
    const std::uint64_t rem = mpz_fdiv_ui(start.mpz().get_mpz_t(), 12);
    start += BigUint((11 + 12 - rem) % 12);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      residues[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(start.mpz().get_mpz_t(), primes[i]));
    }
    for (std::size_t step = 0; step < kWalk; ++step) {
      bool sieved = false;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if (step != 0) {
          residues[i] += 12;
          if (residues[i] >= primes[i]) residues[i] -= primes[i];
          if (residues[i] >= primes[i]) residues[i] %= primes[i];
        }
        sieved = sieved || residues[i] <= 1;
      }
      if (sieved) continue;
      BigUint p = start + BigUint(12 * static_cast<std::uint64_t>(step));
      if (!(p < high)) break;
      BigUint q = (p - 1) >> 1;
      if (!passes_base_two(q.mpz()) || !passes_base_two(p.mpz())) continue;
      if (is_probable_prime(q) && is_probable_prime(p)) return {std::move(p), std::move(q)};
    }
  }
}

bool validate_primitive_root(const BigUint& g, const SafePrime& group) {
  const BigUint& p = group.p;
  if (g < BigUint(2) || p < BigUint(4) || g > p - 2) {
    throw Error(ErrorCode::kParameter,
                "generator g=" + g.to_dec() + " outside [2, p-2] for p=" + p.to_dec());
  }
  return mod_exp(g, 2, p) != BigUint(1) && mod_exp(g, group.q, p) != BigUint(1);
}

bool validate_primitive_root(const BigUint& g, const DomainParams& params) {
  return validate_primitive_root(g, params.safe_prime());
}

BigUint find_primitive_root(const SafePrime& group) {
  for (BigUint g(2); g <= group.p - 2; g += 1) {
    if (validate_primitive_root(g, group)) return g;
  }
  throw Error(ErrorCode::kParameter, "no primitive root found; p is not a safe prime");
}

DomainParams generate_domain_params(std::size_t bits, RandomSource& rng) {
  SafePrime group = generate_safe_prime(bits, rng);
  BigUint g = find_primitive_root(group);
  return DomainParams::create(group.p, g);
}

BigUint sample_exponent(const DomainParams& params,
                        const std::optional<BigUint>& unit_sum_with,
                        RandomSource& rng) {
  const BigUint& order = params.order();
  for (;;) {
    BigUint value = rng.uniform_below(order);
    if (!unit_sum_with) return value;
    if (gcd((value + *unit_sum_with) % order, order) == BigUint(1)) return value;
  }
}

}  // namespace qke
