#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "perdecomp/action.hpp"
#include "perdecomp/condition.hpp"
#include "perdecomp/rational.hpp"

namespace perdecomp {

/// f = parts[0] + ... + parts[n-1] with parts[j] invariant under T_j.
struct Decomposition {
  std::vector<FnVec> parts;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// The data of the lifting problem "find g with Delta_T g = 0 and
/// Delta_S g = G": G pushed down to the quotient by <T>-orbits, the map S
/// induces there, and one representative per cycle of that map.
struct LiftProblem {
  std::vector<std::vector<Point>> quotient;  ///< <T>-orbits, ordered by minimal point
  std::vector<std::size_t> class_of;         ///< point -> quotient id
  std::vector<std::size_t> induced_map;      ///< quotient id -> quotient id of S(x)
  FnVec induced_values;                      ///< G on each class
  std::vector<std::size_t> representatives;  ///< smallest quotient id of each induced cycle
};

/// Throws NotTPeriodicError when Delta_T G != 0.
LiftProblem make_lift_problem(const Permutation& t, const Permutation& s, const FnVec& g);

/// Returns g with Delta_T g = 0 and Delta_S g = G, built from partial sums
/// along each induced cycle starting at its representative. Throws
/// NotTPeriodicError, or PreconditionViolatedError when an induced cycle has
/// a nonzero sum (no solution exists then).
FnVec solve_lift(const Permutation& t, const Permutation& s, const FnVec& g);
FnVec solve_lift(const Action& action, const GroupElement& t, const GroupElement& s,
                 const FnVec& g);

using DecomposeResult = std::variant<Decomposition, ViolationCertificate>;

/// Checks the condition, then builds a decomposition orbit by orbit with the
/// difference/average/lift recursion, processing generators in input order.
/// Throws Error(InternalInvariantFailure) if a lift fails after the check
/// passed.
DecomposeResult decompose(const Action& action, const FnVec& f, const CheckOptions& options = {});

struct VerifyResult {
  bool valid = true;
  std::string reason;
  std::size_t part = 0;  ///< offending part when invariance fails
  Point witness = 0;

  explicit operator bool() const { return valid; }
};

/// Throws ShapeMismatch when the part count or a part length is wrong.
VerifyResult verify_decomposition(const Action& action, const FnVec& f,
                                  std::span<const FnVec> parts);

enum class Ring { Rational, Integer };

struct OracleResult {
  bool feasible = false;
  Decomposition decomposition;
  /// Integer ring only: point weights w with sum_x w(x) * [x in orbit]
  /// integral for every <T_j>-orbit, while sum_x w(x) f(x) is not an integer.
  FnVec refutation;
};

/// Brute-force linear oracle: one unknown per <T_j>-orbit per generator, one
/// equation per point. Throws NonIntegerInput for Ring::Integer with a
/// fractional f.
OracleResult oracle_feasible(const Action& action, const FnVec& f, Ring ring);

/// Value of sum_x w(x) f(x) for a refutation, and whether w is integral on
/// every <T_j>-orbit.
std::pair<bool, Rational> check_refutation(const Action& action, const FnVec& f,
                                           const FnVec& weights);

struct MBound {
  BigInt value = 1;
  std::vector<std::pair<std::size_t, std::uint64_t>> trace;  ///< (generator, factor)
};

/// M(T_1..T_n) = ord(T_1|orbit) * M(T_2..T_n), M(single) = 1, over the given
/// generator order.
MBound m_bound(const Action& action, std::span<const Point> orbit,
               std::span<const std::size_t> order);

struct BezoutPlan {
  std::vector<BigInt> multipliers;
  std::vector<BigInt> coefficients;
};

/// Coefficients from ext_gcd; throws NotUnityCombination unless the
/// multipliers are coprime.
BezoutPlan make_bezout_plan(std::span<const BigInt> multipliers);

/// part_j = sum_i coefficients[i] * multipliers[i] * decompositions[i].part_j.
/// Throws PlanMismatch, NotUnityCombination.
Decomposition bezout_combine(std::span<const Decomposition> decompositions,
                             const BezoutPlan& plan);

}  // namespace perdecomp
