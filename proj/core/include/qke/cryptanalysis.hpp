#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qke/dlog.hpp"
#include "qke/keys.hpp"
#include "qke/protocol.hpp"

// Desk-scale adversary harness.  An adversary with a discrete-log oracle
// turns public values into linear residues mod p-1; the enumerator then
// counts every private key consistent with them.

namespace qke {

/// Largest p - 1, in bits, that enumerate_solutions() will walk.
inline constexpr std::size_t kMaxEnumerationBits = 16;
inline constexpr std::size_t kMaxReportedCandidates = 1000;

enum class AdversaryModel {
  kPublicOnly,  // sees Alice's public key: x+z = c1, y+z = c2
  kChannel,     // sees both public keys and both intermediates: c1..c6
  kInsider,     // is Alice's peer: c1, c2 and w(x*x_e + y*y_e) = c3
};

/// How the finalization exponent w is treated when counting solutions.
enum class WInterpretation {
  kFreeVariable,    // any w that makes the equations solvable
  kDerivedFromKey,  // w = (x + y)^-1 mod (p-1), as the protocol computes it
};

const char* to_string(AdversaryModel model) noexcept;
const char* to_string(WInterpretation interpretation) noexcept;

struct LabeledResidue {
  std::string label;
  std::uint64_t value = 0;

  friend bool operator==(const LabeledResidue&, const LabeledResidue&) = default;
};

struct ConstraintSystem {
  std::uint64_t modulus = 0;  // p - 1
  AdversaryModel model = AdversaryModel::kPublicOnly;
  std::vector<LabeledResidue> knowns;
  std::optional<PrivateKey> insider_key;  // Insider only
  WInterpretation w_interpretation = WInterpretation::kDerivedFromKey;

  std::size_t constraint_count() const { return knowns.size(); }
  /// Throws kParameter for an unknown label.
  std::uint64_t known(std::string_view label) const;
  ConstraintSystem with_interpretation(WInterpretation interpretation) const;
};

struct KeyTriple {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t z = 0;

  friend auto operator<=>(const KeyTriple&, const KeyTriple&) = default;
};

struct SolutionReport {
  /// Distinct (x, y, z) triples of the target key that satisfy every
  /// constraint and the unit rule gcd(x + y, p - 1) = 1.
  std::uint64_t candidate_count = 0;
  /// Full assignments of every unknown, counting each admissible w (and, for
  /// Channel, each completion of the peer's key) separately.
  std::uint64_t assignment_count = 0;
  bool truth_supplied = false;
  bool contains_true_key = false;
  std::vector<KeyTriple> candidates;  // ascending, at most kMaxReportedCandidates
  WInterpretation interpretation = WInterpretation::kDerivedFromKey;
};

ConstraintSystem constraints_from_public_key(const PublicKey& key, const DlogSolver& oracle);
ConstraintSystem constraints_from_public_key(const PublicKey& key);

/// msg_ab travels from the owner of pk_a to the owner of pk_b; msg_ba the other way.
ConstraintSystem constraints_from_transcript(const PublicKey& pk_a, const PublicKey& pk_b,
                                             const IntermediateValue& msg_ab,
                                             const IntermediateValue& msg_ba,
                                             const DlogSolver& oracle);
ConstraintSystem constraints_from_transcript(const PublicKey& pk_a, const PublicKey& pk_b,
                                             const IntermediateValue& msg_ab,
                                             const IntermediateValue& msg_ba);

/// `eve` is the insider's own private key; msg_from_alice is what Alice sent her.
ConstraintSystem constraints_from_insider(const PublicKey& pk_a, const PrivateKey& eve,
                                          const IntermediateValue& msg_from_alice,
                                          const DlogSolver& oracle);
ConstraintSystem constraints_from_insider(const PublicKey& pk_a, const PrivateKey& eve,
                                          const IntermediateValue& msg_from_alice);

/// Exhaustive walk over the free variables left after substitution: z for
/// PublicOnly and Insider, (z_a, z_b) for Channel.  Throws kScale when
/// p - 1 exceeds 2^kMaxEnumerationBits.
SolutionReport enumerate_solutions(const ConstraintSystem& system,
                                   const PrivateKey* true_key = nullptr);

}  // namespace qke
