#include "perdecomp/decompose.hpp"

#include <algorithm>
#include <numeric>

#include "perdecomp/error.hpp"
#include "perdecomp/numeric.hpp"

namespace perdecomp {

// --- Lift ------------------------------------------------------------------

LiftProblem make_lift_problem(const Permutation& t, const Permutation& s, const FnVec& g) {
  if (t.size() != g.size() || s.size() != g.size())
    throw Error(ErrorKind::ShapeMismatch, "lift operands have different sizes");
  for (std::size_t x = 0; x < g.size(); ++x)
    if (g[t(static_cast<Point>(x))] != g[x]) throw NotTPeriodicError(static_cast<Point>(x));

  OrbitPartition classes = cycles_of(t);
  LiftProblem p;
  p.quotient = std::move(classes.orbits);
  p.class_of = std::move(classes.orbit_of);
  const std::size_t q = p.quotient.size();
  p.induced_map.resize(q);
  p.induced_values.resize(q);
  for (std::size_t c = 0; c < q; ++c) {
    const Point x = p.quotient[c].front();
    p.induced_map[c] = p.class_of[s(x)];
    p.induced_values[c] = g[x];
  }
  std::vector<bool> seen(q, false);
  for (std::size_t c = 0; c < q; ++c) {
    if (seen[c]) continue;
    p.representatives.push_back(c);
    for (std::size_t d = c; !seen[d]; d = p.induced_map[d]) seen[d] = true;
  }
  return p;
}

FnVec solve_lift(const Permutation& t, const Permutation& s, const FnVec& g) {
  const LiftProblem p = make_lift_problem(t, s, g);
  FnVec lifted(p.quotient.size());
  std::vector<std::size_t> cycle;
  for (std::size_t rep : p.representatives) {
    cycle.clear();
    std::size_t d = rep;
    do {
      cycle.push_back(d);
      d = p.induced_map[d];
    } while (d != rep);

    Rational total;
    for (std::size_t c : cycle) total += p.induced_values[c];
    if (!total.is_zero()) {
      std::vector<Point> witness;
      for (std::size_t c : cycle) witness.push_back(p.quotient[c].front());
      throw PreconditionViolatedError(std::move(witness), total.to_string());
    }

    // cycle[i] reaches the representative after L - i steps, so its value is
    // G(rep) minus the G-sum over cycle[i..L).
    const Rational base = p.induced_values[rep];
    Rational suffix;
    for (std::size_t i = cycle.size(); i-- > 1;) {
      suffix += p.induced_values[cycle[i]];
      lifted[cycle[i]] = base - suffix;
    }
    lifted[rep] = base;
  }

  FnVec out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = lifted[p.class_of[x]];
  return out;
}

FnVec solve_lift(const Action& action, const GroupElement& t, const GroupElement& s,
                 const FnVec& g) {
  if (g.size() != action.carrier_size())
    throw Error(ErrorKind::ShapeMismatch, "function does not match the carrier");
  return solve_lift(t.perm, s.perm, g);
}

// --- Constructive decomposition --------------------------------------------

namespace {

[[noreturn]] void internal_failure(const std::string& what) {
  throw Error(ErrorKind::InternalInvariantFailure, what);
}

bool is_zero(const FnVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

// Mean of v over each cycle of t.
FnVec cycle_average(const Permutation& t, const FnVec& v) {
  const OrbitPartition cycles = cycles_of(t);
  FnVec out(v.size());
  for (const auto& cyc : cycles.orbits) {
    Rational sum;
    for (Point x : cyc) sum += v[x];
    sum /= Rational(static_cast<long long>(cyc.size()));
    for (Point x : cyc) out[x] = sum;
  }
  return out;
}

// Decomposes f with respect to gens[first..] on one invariant point set.
// With every generator of finite order the averaging exponent is a full
// period of T_1, so the correction term of the infinite-order case vanishes.
std::vector<FnVec> decompose_set(const std::vector<Permutation>& gens, std::size_t first,
                                 const FnVec& f) {
  const std::size_t count = gens.size() - first;
  if (count == 0) {
    if (!is_zero(f)) internal_failure("nonzero remainder with no generators left");
    return {};
  }
  const Permutation& t1 = gens[first];
  if (count == 1) {
    if (!is_zero(difference(t1, f)))
      internal_failure("last generator does not fix the remaining function");
    return {f};
  }

  const FnVec g = difference(t1, f);
  const std::vector<FnVec> sub = decompose_set(gens, first + 1, g);

  std::vector<FnVec> parts(count);
  for (std::size_t j = 1; j < count; ++j) {
    const FnVec& gj = sub[j - 1];
    const FnVec avg = cycle_average(t1, gj);
    FnVec correction(gj.size());
    for (std::size_t x = 0; x < gj.size(); ++x) correction[x] = gj[x] - avg[x];
    try {
      parts[j] = solve_lift(gens[first + j], t1, correction);
    } catch (const Error& e) {
      internal_failure(std::string("lift failed after the condition passed: ") + e.what());
    }
  }
  FnVec f1 = f;
  for (std::size_t j = 1; j < count; ++j)
    for (std::size_t x = 0; x < f1.size(); ++x) f1[x] -= parts[j][x];
  if (!is_zero(difference(t1, f1))) internal_failure("first part is not invariant");
  parts[0] = std::move(f1);
  return parts;
}

}  // namespace

DecomposeResult decompose(const Action& action, const FnVec& f, const CheckOptions& options) {
  CheckResult check = check_condition(action, f, options);
  if (!check.pass()) return std::move(*check.violation);

  const std::size_t n = action.generator_count();
  Decomposition out;
  out.parts.assign(n, FnVec(action.carrier_size()));
  const OrbitPartition orbits = orbit_partition(action);
  for (const auto& orbit : orbits.orbits) {
    const OrbitView view(action.carrier_size(), orbit);
    std::vector<Permutation> local;
    for (const auto& g : action.generators()) local.push_back(view.restrict(g));
    FnVec values(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) values[i] = f[orbit[i]];

    const std::vector<FnVec> parts = decompose_set(local, 0, values);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < orbit.size(); ++i) out.parts[j][orbit[i]] = parts[j][i];
  }
  return out;
}

// --- Verification ----------------------------------------------------------

VerifyResult verify_decomposition(const Action& action, const FnVec& f,
                                  std::span<const FnVec> parts) {
  const std::size_t m = action.carrier_size();
  if (parts.size() != action.generator_count())
    throw Error(ErrorKind::ShapeMismatch, std::to_string(parts.size()) + " parts for " +
                                              std::to_string(action.generator_count()) +
                                              " generators");
  if (f.size() != m) throw Error(ErrorKind::ShapeMismatch, "function does not match the carrier");
  for (const auto& p : parts)
    if (p.size() != m) throw Error(ErrorKind::ShapeMismatch, "part does not match the carrier");

  for (std::size_t j = 0; j < parts.size(); ++j) {
    const Permutation& t = action.generator(j);
    for (Point x = 0; x < m; ++x)
      if (parts[j][t(x)] != parts[j][x])
        return {false, "part " + std::to_string(j + 1) + " is not invariant under its generator",
                j, x};
  }
  for (Point x = 0; x < m; ++x) {
    Rational sum;
    for (const auto& p : parts) sum += p[x];
    if (sum != f[x]) return {false, "parts do not sum to the function", 0, x};
  }
  return {};
}

// --- Oracle ----------------------------------------------------------------

namespace {

struct OracleLayout {
  std::vector<OrbitPartition> cycles;  // per generator
  std::vector<std::size_t> offset;
  std::size_t unknowns = 0;
};

OracleLayout layout_for(const Action& action) {
  OracleLayout l;
  for (const auto& g : action.generators()) {
    l.offset.push_back(l.unknowns);
    l.cycles.push_back(cycles_of(g));
    l.unknowns += l.cycles.back().count();
  }
  return l;
}

}  // namespace

OracleResult oracle_feasible(const Action& action, const FnVec& f, Ring ring) {
  if (f.size() != action.carrier_size())
    throw Error(ErrorKind::ShapeMismatch, "function does not match the carrier");
  if (ring == Ring::Integer && !all_integers(f))
    throw Error(ErrorKind::NonIntegerInput, "integer oracle needs an integer-valued function");

  const OracleLayout layout = layout_for(action);
  const std::size_t n = action.generator_count();
  RatMatrixSystem system(layout.unknowns);
  for (std::size_t x = 0; x < f.size(); ++x) {
    std::vector<Rational> row(layout.unknowns);
    for (std::size_t j = 0; j < n; ++j) row[layout.offset[j] + layout.cycles[j].orbit_of[x]] += 1;
    system.add_equation(std::move(row), f[x]);
  }

  const LinearSolution sol =
      ring == Ring::Rational ? gauss_solve(system) : hnf_solve_integer(system);
  OracleResult out;
  if (!sol.feasible) {
    out.refutation = sol.refutation;
    return out;
  }
  out.feasible = true;
  out.decomposition.parts.assign(n, FnVec(f.size()));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t x = 0; x < f.size(); ++x)
      out.decomposition.parts[j][x] = sol.values[layout.offset[j] + layout.cycles[j].orbit_of[x]];
  return out;
}

std::pair<bool, Rational> check_refutation(const Action& action, const FnVec& f,
                                           const FnVec& weights) {
  if (weights.size() != f.size() || f.size() != action.carrier_size()) return {false, Rational()};
  const OracleLayout layout = layout_for(action);
  bool integral = true;
  for (std::size_t j = 0; j < action.generator_count(); ++j) {
    FnVec per_orbit(layout.cycles[j].count());
    for (std::size_t x = 0; x < f.size(); ++x) per_orbit[layout.cycles[j].orbit_of[x]] += weights[x];
    integral = integral && all_integers(per_orbit);
  }
  Rational value;
  for (std::size_t x = 0; x < f.size(); ++x) value += weights[x] * f[x];
  return {integral, value};
}

// --- Denominator bound -----------------------------------------------------

MBound m_bound(const Action& action, std::span<const Point> orbit,
               std::span<const std::size_t> order) {
  MBound out;
  if (order.empty()) return out;
  const OrbitView view(action.carrier_size(), orbit);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const std::uint64_t factor = view.restrict(action.generators().at(order[i])).order();
    out.trace.emplace_back(order[i], factor);
    out.value *= BigInt(std::to_string(factor));
  }
  out.trace.emplace_back(order.back(), 1);
  return out;
}

// --- Bezout recombination --------------------------------------------------

BezoutPlan make_bezout_plan(std::span<const BigInt> multipliers) {
  const BezoutIdentity id = ext_gcd(multipliers);
  if (id.gcd != 1)
    throw Error(ErrorKind::NotUnityCombination, "multipliers have gcd " + id.gcd.get_str());
  return {std::vector<BigInt>(multipliers.begin(), multipliers.end()), id.coefficients};
}

Decomposition bezout_combine(std::span<const Decomposition> decompositions,
                             const BezoutPlan& plan) {
  if (decompositions.empty() || plan.multipliers.size() != decompositions.size() ||
      plan.coefficients.size() != decompositions.size())
    throw Error(ErrorKind::PlanMismatch, "plan length does not match the decomposition count");
  BigInt unity = 0;
  for (std::size_t i = 0; i < plan.multipliers.size(); ++i)
    unity += plan.coefficients[i] * plan.multipliers[i];
  if (unity != 1)
    throw Error(ErrorKind::NotUnityCombination, "sum d_i m_i = " + unity.get_str());

  const auto& first = decompositions.front().parts;
  auto sum_of = [](const Decomposition& d, std::size_t size) {
    FnVec s(size);
    for (const auto& p : d.parts)
      for (std::size_t x = 0; x < size; ++x) s[x] += p[x];
    return s;
  };
  const std::size_t size = first.empty() ? 0 : first.front().size();
  const FnVec target = sum_of(decompositions.front(), size);
  for (const auto& d : decompositions) {
    if (d.parts.size() != first.size())
      throw Error(ErrorKind::PlanMismatch, "decompositions have different part counts");
    for (const auto& p : d.parts)
      if (p.size() != size) throw Error(ErrorKind::PlanMismatch, "part sizes differ");
    if (sum_of(d, size) != target)
      throw Error(ErrorKind::PlanMismatch, "decompositions do not sum to the same function");
  }

  Decomposition out;
  out.parts.assign(first.size(), FnVec(size));
  for (std::size_t i = 0; i < decompositions.size(); ++i) {
    const Rational weight(plan.coefficients[i] * plan.multipliers[i]);
    if (weight.is_zero()) continue;
    for (std::size_t j = 0; j < first.size(); ++j)
      for (std::size_t x = 0; x < size; ++x)
        out.parts[j][x] += weight * decompositions[i].parts[j][x];
  }
  return out;
}

}  // namespace perdecomp
