#include "qke/cryptanalysis.hpp"

#include <algorithm>
#include <numeric>

#include "qke/errors.hpp"

namespace qke {

namespace {

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return a >= b ? a - b : a + n - b;
}

// Inverse of a mod n for gcd(a, n) = 1, n < 2^32.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
  std::int64_t old_r = static_cast<std::int64_t>(a % n);
  std::int64_t r = static_cast<std::int64_t>(n);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(((old_s % m) + m) % m);
}

std::uint64_t as_u64(const BigUint& v) { return v.to_u64(); }

void require_same_group(const DomainParams& a, const DomainParams& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::kParameter, "transcript values come from different groups");
  }
}

struct Collector {
  SolutionReport report;
  std::optional<KeyTriple> truth;

  void add(const KeyTriple& t, std::uint64_t assignments) {
    ++report.candidate_count;
    report.assignment_count += assignments;
    report.candidates.push_back(t);
    if (truth && *truth == t) report.contains_true_key = true;
  }

  SolutionReport finish() {
    std::sort(report.candidates.begin(), report.candidates.end());
    if (report.candidates.size() > kMaxReportedCandidates) {
      report.candidates.resize(kMaxReportedCandidates);
    }
    return std::move(report);
  }
};

}  // namespace

const char* to_string(AdversaryModel model) noexcept {
  switch (model) {
    case AdversaryModel::kPublicOnly: return "public";
    case AdversaryModel::kChannel: return "channel";
    case AdversaryModel::kInsider: return "insider";
  }
  return "?";
}

const char* to_string(WInterpretation interpretation) noexcept {
  return interpretation == WInterpretation::kFreeVariable ? "free" : "derived";
}

std::uint64_t ConstraintSystem::known(std::string_view label) const {
  for (const auto& k : knowns) {
    if (k.label == label) return k.value;
  }
  throw Error(ErrorCode::kParameter, "constraint system has no residue '" + std::string(label) + "'");
}

ConstraintSystem ConstraintSystem::with_interpretation(WInterpretation interpretation) const {
  ConstraintSystem copy = *this;
  copy.w_interpretation = interpretation;
  return copy;
}

ConstraintSystem constraints_from_public_key(const PublicKey& key, const DlogSolver& oracle) {
  ConstraintSystem out;
  out.modulus = as_u64(key.params.order());
  out.model = AdversaryModel::kPublicOnly;
  out.knowns = {{"c1", oracle.solve(key.P)}, {"c2", oracle.solve(key.Q)}};
  return out;
}

ConstraintSystem constraints_from_public_key(const PublicKey& key) {
  return constraints_from_public_key(key, DlogSolver(key.params));
}

ConstraintSystem constraints_from_transcript(const PublicKey& pk_a, const PublicKey& pk_b,
                                             const IntermediateValue& msg_ab,
                                             const IntermediateValue& msg_ba,
                                             const DlogSolver& oracle) {
  require_same_group(pk_a.params, pk_b.params);
  ConstraintSystem out;
  out.modulus = as_u64(pk_a.params.order());
  out.model = AdversaryModel::kChannel;
  out.knowns = {
      {"c1", oracle.solve(pk_a.P)},      {"c2", oracle.solve(pk_a.Q)},
      {"c3", oracle.solve(pk_b.P)},      {"c4", oracle.solve(pk_b.Q)},
      {"c5", oracle.solve(msg_ab.value)}, {"c6", oracle.solve(msg_ba.value)},
  };
  return out;
}

ConstraintSystem constraints_from_transcript(const PublicKey& pk_a, const PublicKey& pk_b,
                                             const IntermediateValue& msg_ab,
                                             const IntermediateValue& msg_ba) {
  return constraints_from_transcript(pk_a, pk_b, msg_ab, msg_ba, DlogSolver(pk_a.params));
}

ConstraintSystem constraints_from_insider(const PublicKey& pk_a, const PrivateKey& eve,
                                          const IntermediateValue& msg_from_alice,
                                          const DlogSolver& oracle) {
  const DomainParams& params = pk_a.params;
  require_same_group(params, eve.params());
  const BigUint& p = params.p();
  if (msg_from_alice.value.is_zero() || !(msg_from_alice.value < p)) {
    throw Error(ErrorCode::kValidation, "intermediate value must lie in [1, p-1]");
  }
  // Strip Eve's own blinding g^z_e to expose g^(w_a (x_a x_e + y_a y_e)).
  const BigUint unblinded =
      mod_mul(msg_from_alice.value, mod_inv(mod_exp(params.g(), eve.z(), p), p), p);
  ConstraintSystem out;
  out.modulus = as_u64(params.order());
  out.model = AdversaryModel::kInsider;
  out.knowns = {{"c1", oracle.solve(pk_a.P)},
                {"c2", oracle.solve(pk_a.Q)},
                {"c3", oracle.solve(unblinded)}};
  out.insider_key = eve;
  return out;
}

ConstraintSystem constraints_from_insider(const PublicKey& pk_a, const PrivateKey& eve,
                                          const IntermediateValue& msg_from_alice) {
  return constraints_from_insider(pk_a, eve, msg_from_alice, DlogSolver(pk_a.params));
}

SolutionReport enumerate_solutions(const ConstraintSystem& system, const PrivateKey* true_key) {
  const std::uint64_t n = system.modulus;
  if (n < 2 || n > (std::uint64_t{1} << kMaxEnumerationBits)) {
    throw Error(ErrorCode::kScale, "exhaustive enumeration is capped at p-1 <= 2^" +
                                       std::to_string(kMaxEnumerationBits) +
                                       "; got p-1=" + std::to_string(n));
  }
  const bool free_w = system.w_interpretation == WInterpretation::kFreeVariable;

  Collector sink;
  sink.report.interpretation = system.w_interpretation;
  if (true_key != nullptr) {
    sink.report.truth_supplied = true;
    sink.truth = KeyTriple{as_u64(true_key->x()), as_u64(true_key->y()), as_u64(true_key->z())};
  }

  const std::uint64_t c1 = system.known("c1") % n;
  const std::uint64_t c2 = system.known("c2") % n;
  // Alice's triple and the unit test on x + y depend on z alone.
  const auto triple_for = [&](std::uint64_t z) {
    return KeyTriple{sub_mod(c1, z, n), sub_mod(c2, z, n), z};
  };
  const auto key_sum = [&](const KeyTriple& t) { return (t.x + t.y) % n; };

  switch (system.model) {
    case AdversaryModel::kPublicOnly: {
      for (std::uint64_t z = 0; z < n; ++z) {
        const KeyTriple t = triple_for(z);
        if (std::gcd(key_sum(t), n) == 1) sink.add(t, 1);
      }
      break;
    }
    case AdversaryModel::kInsider: {
      if (!system.insider_key) {
        throw Error(ErrorCode::kParameter, "insider system lacks the insider's key");
      }
      const std::uint64_t xe = as_u64(system.insider_key->x()) % n;
      const std::uint64_t ye = as_u64(system.insider_key->y()) % n;
      const std::uint64_t c3 = system.known("c3") % n;
      for (std::uint64_t z = 0; z < n; ++z) {
        const KeyTriple t = triple_for(z);
        const std::uint64_t sum = key_sum(t);
        if (std::gcd(sum, n) != 1) continue;
        const std::uint64_t cross = (t.x * xe + t.y * ye) % n;
        if (free_w) {
          // w * cross = c3 (mod n) has gcd(cross, n) solutions when solvable.
          const std::uint64_t d = std::gcd(cross, n);
          if (c3 % d == 0) sink.add(t, d);
        } else if (inv_mod(sum, n) * cross % n == c3) {
          sink.add(t, 1);
        }
      }
      break;
    }
    case AdversaryModel::kChannel: {
      const std::uint64_t c3 = system.known("c3") % n;
      const std::uint64_t c4 = system.known("c4") % n;
      const std::uint64_t c5 = system.known("c5") % n;
      const std::uint64_t c6 = system.known("c6") % n;
      // Units among Bob's completions, precomputed per z_b.
      std::vector<std::uint64_t> bob_w(n, 0);
      std::vector<bool> bob_valid(n, false);
      for (std::uint64_t zb = 0; zb < n; ++zb) {
        const std::uint64_t sum = (sub_mod(c3, zb, n) + sub_mod(c4, zb, n)) % n;
        if (std::gcd(sum, n) == 1) {
          bob_valid[zb] = true;
          bob_w[zb] = inv_mod(sum, n);
        }
      }
      for (std::uint64_t za = 0; za < n; ++za) {
        const KeyTriple a = triple_for(za);
        const std::uint64_t sum_a = key_sum(a);
        if (std::gcd(sum_a, n) != 1) continue;
        const std::uint64_t wa = inv_mod(sum_a, n);
        std::uint64_t assignments = 0;
        for (std::uint64_t zb = 0; zb < n; ++zb) {
          if (!bob_valid[zb]) continue;
          const std::uint64_t xb = sub_mod(c3, zb, n);
          const std::uint64_t yb = sub_mod(c4, zb, n);
          const std::uint64_t cross = (a.x * xb + a.y * yb) % n;
          const std::uint64_t t5 = sub_mod(c5, zb, n);
          const std::uint64_t t6 = sub_mod(c6, za, n);
          if (free_w) {
            const std::uint64_t d = std::gcd(cross, n);
            if (t5 % d == 0 && t6 % d == 0) assignments += d * d;
          } else if (wa * cross % n == t5 && bob_w[zb] * cross % n == t6) {
            ++assignments;
          }
        }
        if (assignments > 0) sink.add(a, assignments);
      }
      break;
    }
  }
  return sink.finish();
}

}  // namespace qke
