#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "perdecomp/abelian.hpp"
#include "perdecomp/action.hpp"
#include "perdecomp/condition.hpp"
#include "perdecomp/report.hpp"

namespace perdecomp {

/// Small deterministic generator (splitmix64) so instance streams do not
/// depend on the standard library's distribution implementations.
class FuzzRng {
 public:
  explicit FuzzRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(unsigned percent) { return uniform(0, 99) < static_cast<std::int64_t>(percent); }

 private:
  std::uint64_t state_;
};

/// Seed of instance i derived from the master seed.
std::uint64_t instance_seed(std::uint64_t master, std::uint64_t index);

enum class FnKind { InvariantSum, Perturbed, Random };

struct FuzzCase {
  std::string family;  ///< "translations", "powers", "union"
  FnKind kind = FnKind::Random;
  Action action;
  FnVec f;
  std::vector<FnVec> invariant_parts;  ///< the summands for InvariantSum
};

/// Random commuting action with carrier <= max_carrier and 1..max_gens
/// generators, built only from constructions that commute by design.
Action random_action(FuzzRng& rng, std::size_t max_carrier, std::size_t max_gens,
                     std::string* family = nullptr);

/// Random T_j-invariant vector: one value per <T_j>-cycle.
FnVec random_invariant(FuzzRng& rng, const Permutation& t, bool fractions);

/// sum_j random_invariant(T_j); parts are returned through out_parts.
FnVec random_invariant_sum(FuzzRng& rng, const Action& action, bool fractions,
                           std::vector<FnVec>* out_parts = nullptr);

FuzzCase random_case(FuzzRng& rng, std::size_t max_carrier, std::size_t max_gens);

/// Random window instance whose f is a sum of integer periodic functions.
WindowInstance random_periodic_window(FuzzRng& rng, std::int64_t max_period,
                                      std::size_t max_gens, std::size_t window_factor);

enum class Fault { None, DropLastOperator };

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::size_t max_carrier = 40;
  std::size_t max_gens = 4;
  Fault fault = Fault::None;
};

/// Outcome of cross-validating one finite instance.
struct CaseOutcome {
  bool agree = true;
  std::string problem;  ///< first failed check
  bool decomposable = false;
  bool exhaustive_compared = false;
  bool m_bound_checked = false;
};

CaseOutcome cross_check(const Action& action, const FnVec& f, Fault fault = Fault::None);

/// Runs the sweep. Verdict conditions_only when everything agrees, otherwise
/// internal_error with a minimized reproducer in the diagnostics.
Report fuzz(const FuzzOptions& options);

}  // namespace perdecomp
