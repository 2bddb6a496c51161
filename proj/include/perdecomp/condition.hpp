#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "perdecomp/action.hpp"
#include "perdecomp/rational.hpp"

namespace perdecomp {

/// Carrier-indexed function values.
using FnVec = std::vector<Rational>;

/// result(x) = f(S(x)) - f(x). Throws ShapeMismatch.
FnVec difference(const Action& action, const GroupElement& s, const FnVec& f);
FnVec difference(const Permutation& s, const FnVec& f);

/// Left fold of difference() over `elements`. The operators commute, so the
/// order does not affect the result.
FnVec iterated_difference(const Action& action, std::span<const GroupElement> elements,
                          const FnVec& f);

/// Evidence that the condition fails: on orbit `orbit`, the chain of
/// difference operators for `chosen` (one element of [B_j] per block of
/// `partition`) is nonzero at `witness`.
struct ViolationCertificate {
  std::size_t orbit = 0;
  SetPartition partition;
  std::vector<GroupElement> chosen;
  Point witness = 0;
  Rational value;

  friend bool operator==(const ViolationCertificate&, const ViolationCertificate&) = default;
};

enum class CheckMode {
  Generator,   ///< one canonical generator of each [B_j]
  Exhaustive,  ///< every element of each [B_j]
};

struct CheckOptions {
  CheckMode mode = CheckMode::Generator;
  std::size_t partition_cap = kDefaultPartitionCap;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  /// Exhaustive mode: maximum operator chains per (orbit, partition).
  std::size_t exhaustive_budget = 10'000'000;
  /// Skip partitions with a trivial [B_j]; their chains contain the identity
  /// and vanish identically.
  bool skip_trivial = true;
};

struct CheckResult {
  std::optional<ViolationCertificate> violation;
  std::size_t chains_evaluated = 0;
  std::size_t trivial_skipped = 0;

  bool pass() const { return !violation.has_value(); }
};

/// Scans orbits (by minimal point), partitions (restricted-growth order) and
/// witnesses (ascending point) and returns the first violation, if any.
/// Throws CapExceeded, ShapeMismatch.
CheckResult check_condition(const Action& action, const FnVec& f, const CheckOptions& options = {});

/// Re-evaluates a certificate from scratch: indices in range, partition
/// valid, each chosen element equal to its word and a member of [B_j] on the
/// orbit, and the chain value at the witness equal to the recorded nonzero
/// value.
bool verify_certificate(const Action& action, const FnVec& f, const ViolationCertificate& cert,
                        std::size_t enumeration_cap = kDefaultEnumerationCap);

}  // namespace perdecomp
