#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "perdecomp/action.hpp"
#include "perdecomp/condition.hpp"
#include "perdecomp/decompose.hpp"
#include "perdecomp/rational.hpp"

namespace perdecomp {

/// Coordinates of a period, either in Z^d / Q^d or over a fixed
/// Q-linearly-independent basis of reals (e.g. (a, b) meaning a + b*sqrt 2).
using PeriodVector = std::vector<Rational>;

/// Translations of Z_{m_1} x ... x Z_{m_d}; points are numbered row-major
/// (last coordinate fastest). Periods are reduced modulo the moduli. Throws
/// BadModulus, ShapeMismatch.
Action finite_abelian_action(std::span<const std::int64_t> moduli,
                             std::span<const std::vector<std::int64_t>> periods);

struct CommensurabilityClasses {
  std::vector<std::vector<std::size_t>> classes;  ///< period indices, by first member
  std::vector<PeriodVector> primitive;            ///< integral, coprime, first nonzero > 0
  std::vector<std::size_t> class_of;
  std::vector<Rational> multiple;  ///< periods[i] == multiple[i] * primitive[class_of[i]]
};

/// Groups periods that are rational multiples of each other. Throws
/// ZeroPeriod, ShapeMismatch.
CommensurabilityClasses commensurability_classes(std::span<const PeriodVector> periods);

/// Generator (positive orientation) of the intersection of the cyclic groups
/// of parallel periods. Throws NotParallel, ZeroPeriod, EmptyInput.
PeriodVector vector_lcm(std::span<const PeriodVector> periods);

struct ConditionEntry {
  SetPartition partition;
  std::vector<PeriodVector> shifts;  ///< one lcm vector per block
};

struct ConditionList {
  std::vector<ConditionEntry> entries;
  std::size_t trivial_count = 0;    ///< partitions with an incommensurable block
  std::size_t duplicate_count = 0;  ///< nontrivial partitions repeating a shift multiset
};

/// One difference condition per set partition whose blocks are internally
/// commensurable, in restricted-growth order, deduplicated by the multiset of
/// shifts.
ConditionList generate_conditions(std::span<const PeriodVector> periods,
                                  std::size_t partition_cap = kDefaultPartitionCap);

/// f sampled on {0..W-1} of the integer line, with positive integer periods.
struct WindowInstance {
  std::vector<std::int64_t> periods;
  std::size_t window = 0;
  FnVec values;

  /// Throws ShapeMismatch / NonPositive.
  void validate() const;
};

struct WindowViolation {
  SetPartition partition;
  std::vector<std::int64_t> shifts;
  std::size_t witness = 0;
  Rational value;
};

struct WindowCheck {
  std::optional<WindowViolation> violation;
  std::vector<ConditionEntry> untestable;  ///< conditions with no evaluable point
  std::size_t evaluated = 0;

  bool pass() const { return !violation.has_value(); }
};

/// Evaluates every generated condition at each x with x + sum(shifts) < W.
WindowCheck check_window(const WindowInstance& instance);

struct WindowSolution {
  bool feasible = false;
  std::vector<FnVec> parts;  ///< parts[j][r] = value on residue r mod periods[j]
  FnVec refutation;          ///< integer ring: per-sample weights, see OracleResult
};

/// Solves sum_j part_j(x mod a_j) = f(x) on the window. Throws
/// NonIntegerInput for Ring::Integer with fractional values.
WindowSolution solve_window(const WindowInstance& instance, Ring ring);

}  // namespace perdecomp
