#include "perdecomp/abelian.hpp"

#include <algorithm>

#include "perdecomp/error.hpp"
#include "perdecomp/numeric.hpp"

namespace perdecomp {

Action finite_abelian_action(std::span<const std::int64_t> moduli,
                             std::span<const std::vector<std::int64_t>> periods) {
  if (moduli.empty()) throw Error(ErrorKind::BadModulus, "at least one modulus is required");
  std::size_t size = 1;
  for (std::int64_t m : moduli) {
    if (m < 1) throw Error(ErrorKind::BadModulus, "modulus " + std::to_string(m) + " < 1");
    if (size > (std::size_t{1} << 31) / static_cast<std::size_t>(m))
      throw Error(ErrorKind::BadModulus, "group order too large");
    size *= static_cast<std::size_t>(m);
  }
  const std::size_t d = moduli.size();
  std::vector<std::vector<Point>> gens;
  std::vector<std::int64_t> coord(d);
  for (const auto& period : periods) {
    if (period.size() != d)
      throw Error(ErrorKind::ShapeMismatch, "period has " + std::to_string(period.size()) +
                                                " coordinates, group has " + std::to_string(d));
    std::vector<Point> images(size);
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t rest = x;
      for (std::size_t i = d; i-- > 0;) {
        coord[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(moduli[i]));
        rest /= static_cast<std::size_t>(moduli[i]);
      }
      std::size_t y = 0;
      for (std::size_t i = 0; i < d; ++i) {
        std::int64_t c = (coord[i] + period[i] % moduli[i]) % moduli[i];
        if (c < 0) c += moduli[i];
        y = y * static_cast<std::size_t>(moduli[i]) + static_cast<std::size_t>(c);
      }
      images[x] = static_cast<Point>(y);
    }
    gens.push_back(std::move(images));
  }
  return Action::validate(size, std::move(gens));
}

namespace {

std::size_t first_nonzero(const PeriodVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

PeriodVector primitive_of(const PeriodVector& v) {
  const std::size_t k = first_nonzero(v);
  const BigInt den = common_denominator(v);
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& c : v) {
    ints.push_back(c.numerator() * (den / c.denominator()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
  }
  if (v[k].sign() < 0) g = -g;
  PeriodVector out;
  for (const auto& c : ints) out.emplace_back(c / g);
  return out;
}

}  // namespace

CommensurabilityClasses commensurability_classes(std::span<const PeriodVector> periods) {
  CommensurabilityClasses out;
  const std::size_t dim = periods.empty() ? 0 : periods.front().size();
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const PeriodVector& p = periods[i];
    if (p.size() != dim) throw Error(ErrorKind::ShapeMismatch, "periods differ in dimension");
    const std::size_t k = first_nonzero(p);
    if (k == p.size()) throw Error(ErrorKind::ZeroPeriod, "period " + std::to_string(i + 1) + " is zero");
    const PeriodVector prim = primitive_of(p);
    auto it = std::find(out.primitive.begin(), out.primitive.end(), prim);
    const std::size_t cls = static_cast<std::size_t>(it - out.primitive.begin());
    if (it == out.primitive.end()) {
      out.primitive.push_back(prim);
      out.classes.emplace_back();
    }
    out.classes[cls].push_back(i);
    out.class_of.push_back(cls);
    out.multiple.push_back(p[k] / prim[k]);
  }
  return out;
}

PeriodVector vector_lcm(std::span<const PeriodVector> periods) {
  if (periods.empty()) throw Error(ErrorKind::EmptyInput, "vector_lcm needs a period");
  const CommensurabilityClasses cls = commensurability_classes(periods);
  if (cls.classes.size() != 1) throw Error(ErrorKind::NotParallel, "periods are not parallel");
  Rational l = cls.multiple.front().abs();
  for (const auto& q : cls.multiple) l = rational_lcm(l, q.abs());
  PeriodVector out;
  for (const auto& c : cls.primitive.front()) out.push_back(l * c);
  return out;
}

ConditionList generate_conditions(std::span<const PeriodVector> periods,
                                  std::size_t partition_cap) {
  const CommensurabilityClasses cls = commensurability_classes(periods);
  ConditionList out;
  std::vector<std::vector<PeriodVector>> seen;
  for (auto& partition : enumerate_set_partitions(periods.size(), partition_cap)) {
    std::vector<PeriodVector> shifts;
    bool trivial = false;
    for (const auto& block : partition.blocks) {
      const std::size_t c = cls.class_of[block.front()];
      if (!std::all_of(block.begin(), block.end(),
                       [&](std::size_t i) { return cls.class_of[i] == c; })) {
        trivial = true;
        break;
      }
      std::vector<PeriodVector> members;
      for (std::size_t i : block) members.push_back(periods[i]);
      shifts.push_back(vector_lcm(members));
    }
    if (trivial) {
      ++out.trivial_count;
      continue;
    }
    std::vector<PeriodVector> key = shifts;
    std::sort(key.begin(), key.end());
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      ++out.duplicate_count;
      continue;
    }
    seen.push_back(std::move(key));
    out.entries.push_back({std::move(partition), std::move(shifts)});
  }
  return out;
}

void WindowInstance::validate() const {
  if (window < 1) throw Error(ErrorKind::ShapeMismatch, "window must be at least 1");
  if (values.size() != window)
    throw Error(ErrorKind::ShapeMismatch, "window has " + std::to_string(window) + " points but " +
                                              std::to_string(values.size()) + " values");
  for (std::int64_t a : periods)
    if (a < 1) throw Error(ErrorKind::NonPositive, "period " + std::to_string(a) + " < 1");
}

WindowCheck check_window(const WindowInstance& instance) {
  instance.validate();
  std::vector<PeriodVector> periods;
  for (std::int64_t a : instance.periods) periods.push_back({Rational(static_cast<long long>(a))});
  const ConditionList list = generate_conditions(periods);

  WindowCheck out;
  for (const auto& entry : list.entries) {
    FnVec v = instance.values;
    std::vector<std::int64_t> shifts;
    bool testable = true;
    for (const auto& s : entry.shifts) {
      const std::size_t b = s.front().numerator().get_ui();
      shifts.push_back(static_cast<std::int64_t>(b));
      if (b >= v.size()) {
        testable = false;
        break;
      }
      FnVec next(v.size() - b);
      for (std::size_t x = 0; x < next.size(); ++x) next[x] = v[x + b] - v[x];
      v = std::move(next);
    }
    if (!testable) {
      out.untestable.push_back(entry);
      continue;
    }
    ++out.evaluated;
    for (std::size_t x = 0; x < v.size(); ++x) {
      if (!v[x].is_zero()) {
        out.violation = WindowViolation{entry.partition, shifts, x, v[x]};
        return out;
      }
    }
  }
  return out;
}

WindowSolution solve_window(const WindowInstance& instance, Ring ring) {
  instance.validate();
  if (ring == Ring::Integer && !all_integers(instance.values))
    throw Error(ErrorKind::NonIntegerInput, "integer solve needs integer samples");

  std::vector<std::size_t> offset;
  std::size_t unknowns = 0;
  for (std::int64_t a : instance.periods) {
    offset.push_back(unknowns);
    unknowns += static_cast<std::size_t>(a);
  }
  RatMatrixSystem system(unknowns);
  for (std::size_t x = 0; x < instance.window; ++x) {
    std::vector<Rational> row(unknowns);
    for (std::size_t j = 0; j < instance.periods.size(); ++j)
      row[offset[j] + x % static_cast<std::size_t>(instance.periods[j])] += 1;
    system.add_equation(std::move(row), instance.values[x]);
  }
  const LinearSolution sol =
      ring == Ring::Rational ? gauss_solve(system) : hnf_solve_integer(system);
  WindowSolution out;
  if (!sol.feasible) {
    out.refutation = sol.refutation;
    return out;
  }
  out.feasible = true;
  for (std::size_t j = 0; j < instance.periods.size(); ++j)
    out.parts.emplace_back(sol.values.begin() + static_cast<long>(offset[j]),
                           sol.values.begin() + static_cast<long>(offset[j]) +
                               instance.periods[j]);
  return out;
}

}  // namespace perdecomp
