#include "perdecomp/fuzz.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "perdecomp/decompose.hpp"
#include "perdecomp/error.hpp"
#include "perdecomp/instance.hpp"

namespace perdecomp {

using Json = nlohmann::ordered_json;

std::uint64_t FuzzRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t FuzzRng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do r = next();
  while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

std::uint64_t instance_seed(std::uint64_t master, std::uint64_t index) {
  FuzzRng rng(master ^ (index * 0xd1b54a32d192ed03ULL));
  return rng.next();
}

namespace {

std::vector<Point> random_shuffle(FuzzRng& rng, std::size_t n) {
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(p[i - 1], p[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  return p;
}

std::vector<std::vector<Point>> translations(FuzzRng& rng, std::size_t max_carrier,
                                             std::size_t n) {
  const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
  std::vector<std::int64_t> moduli;
  std::size_t size = 1;
  for (std::size_t i = 0; i < d; ++i) {
    const std::int64_t cap = std::min<std::int64_t>(12, static_cast<std::int64_t>(max_carrier / size));
    moduli.push_back(rng.uniform(1, std::max<std::int64_t>(cap, 1)));
    size *= static_cast<std::size_t>(moduli.back());
  }
  std::vector<std::vector<std::int64_t>> periods;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> v;
    for (std::int64_t m : moduli) v.push_back(rng.uniform(0, m - 1));
    periods.push_back(std::move(v));
  }
  const Action a = finite_abelian_action(moduli, periods);
  std::vector<std::vector<Point>> gens;
  for (const auto& g : a.generators()) gens.emplace_back(g.images().begin(), g.images().end());
  if (rng.chance(50)) {
    const auto sigma = random_shuffle(rng, size);
    for (auto& g : gens) {
      std::vector<Point> relabeled(size);
      for (std::size_t x = 0; x < size; ++x) relabeled[sigma[x]] = sigma[g[x]];
      g = std::move(relabeled);
    }
  }
  return gens;
}

std::vector<std::vector<Point>> powers(FuzzRng& rng, std::size_t max_carrier, std::size_t n) {
  const std::size_t size = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_carrier)));
  const Permutation p(random_shuffle(rng, size));
  std::vector<std::vector<Point>> gens;
  for (std::size_t j = 0; j < n; ++j) {
    const Permutation q = p.pow(rng.uniform(0, 12));
    gens.emplace_back(q.images().begin(), q.images().end());
  }
  return gens;
}

std::vector<std::vector<Point>> union_of(const std::vector<std::vector<Point>>& a,
                                         const std::vector<std::vector<Point>>& b) {
  const std::size_t shift = a.front().size();
  std::vector<std::vector<Point>> out = a;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (Point y : b[j]) out[j].push_back(static_cast<Point>(y + shift));
  return out;
}

FnVec random_values(FuzzRng& rng, std::size_t n, bool fractions) {
  const std::int64_t den = fractions ? rng.uniform(2, 3) : 1;
  FnVec out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(BigInt(rng.uniform(-5, 5)), BigInt(den));
  return out;
}

}  // namespace

Action random_action(FuzzRng& rng, std::size_t max_carrier, std::size_t max_gens,
                     std::string* family) {
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_gens)));
  const std::int64_t pick = rng.uniform(0, 9);
  std::vector<std::vector<Point>> gens;
  std::string name;
  if (pick < 5 || max_carrier < 2) {
    name = "translations";
    gens = translations(rng, max_carrier, n);
  } else if (pick < 8) {
    name = "powers";
    gens = powers(rng, max_carrier, n);
  } else {
    name = "union";
    const std::size_t left = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_carrier) - 1));
    auto a = rng.chance(50) ? translations(rng, left, n) : powers(rng, left, n);
    const std::size_t rest = max_carrier - a.front().size();
    auto b = rng.chance(50) ? translations(rng, rest, n) : powers(rng, rest, n);
    gens = union_of(a, b);
  }
  if (family) *family = name;
  const std::size_t size = gens.front().size();
  return Action::validate(size, std::move(gens));
}

FnVec random_invariant(FuzzRng& rng, const Permutation& t, bool fractions) {
  const OrbitPartition cycles = cycles_of(t);
  const FnVec values = random_values(rng, cycles.count(), fractions);
  FnVec out(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) out[x] = values[cycles.orbit_of[x]];
  return out;
}

FnVec random_invariant_sum(FuzzRng& rng, const Action& action, bool fractions,
                           std::vector<FnVec>* out_parts) {
  FnVec f(action.carrier_size());
  for (const auto& g : action.generators()) {
    FnVec part = random_invariant(rng, g, fractions);
    for (std::size_t x = 0; x < f.size(); ++x) f[x] += part[x];
    if (out_parts) out_parts->push_back(std::move(part));
  }
  return f;
}

FuzzCase random_case(FuzzRng& rng, std::size_t max_carrier, std::size_t max_gens) {
  std::string family;
  Action action = random_action(rng, max_carrier, max_gens, &family);
  const bool fractions = rng.chance(30);
  const std::int64_t pick = rng.uniform(0, 9);
  std::vector<FnVec> parts;
  FnVec f;
  FnKind kind;
  if (pick < 4) {
    kind = FnKind::InvariantSum;
    f = random_invariant_sum(rng, action, fractions, &parts);
  } else if (pick < 7) {
    kind = FnKind::Perturbed;
    f = random_invariant_sum(rng, action, fractions);
    const auto x = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(f.size()) - 1));
    f[x] += Rational(rng.uniform(1, 3));
  } else {
    kind = FnKind::Random;
    f = random_values(rng, action.carrier_size(), fractions);
  }
  return FuzzCase{std::move(family), kind, std::move(action), std::move(f), std::move(parts)};
}

WindowInstance random_periodic_window(FuzzRng& rng, std::int64_t max_period,
                                      std::size_t max_gens, std::size_t window_factor) {
  WindowInstance w;
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_gens)));
  std::int64_t l = 1;
  for (std::size_t j = 0; j < n; ++j) {
    w.periods.push_back(rng.uniform(1, max_period));
    l = std::lcm(l, w.periods.back());
  }
  w.window = window_factor * static_cast<std::size_t>(l);
  w.values.assign(w.window, Rational());
  for (std::int64_t a : w.periods) {
    std::vector<std::int64_t> part;
    for (std::int64_t r = 0; r < a; ++r) part.push_back(rng.uniform(-5, 5));
    for (std::size_t x = 0; x < w.window; ++x)
      w.values[x] += Rational(part[x % static_cast<std::size_t>(a)]);
  }
  return w;
}

namespace {

// The injected fault: the condition checked without the last generator, as
// if the final difference operator of every chain had been lost.
CheckResult faulty_check(const Action& action, const FnVec& f) {
  std::vector<std::vector<Point>> gens;
  for (std::size_t j = 0; j + 1 < action.generator_count(); ++j) {
    const auto images = action.generator(j).images();
    gens.emplace_back(images.begin(), images.end());
  }
  return check_condition(Action::validate(action.carrier_size(), std::move(gens)), f);
}

bool restricted_orders_at_most(const Action& action, std::uint64_t limit) {
  for (const auto& orbit : orbit_partition(action).orbits) {
    const OrbitView view(action.carrier_size(), orbit);
    for (const auto& g : action.generators())
      if (view.restrict(g).order() > limit) return false;
  }
  return true;
}

std::string check_m_bound(const Action& action, const FnVec& f, const std::vector<FnVec>& parts) {
  const Rational d(common_denominator(f));
  std::vector<std::size_t> order(action.generator_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (const auto& orbit : orbit_partition(action).orbits) {
    const Rational m = Rational(m_bound(action, orbit, order).value) * d;
    for (std::size_t j = 0; j < parts.size(); ++j)
      for (Point x : orbit)
        if (!(parts[j][x] * m).is_integer())
          return "M * D * part " + std::to_string(j + 1) + " is not integral at point " +
                 std::to_string(x);
  }
  return {};
}

}  // namespace

CaseOutcome cross_check(const Action& action, const FnVec& f, Fault fault) {
  CaseOutcome out;
  auto fail = [&](std::string why) {
    out.agree = false;
    out.problem = std::move(why);
    return out;
  };
  try {
    const CheckResult check =
        fault == Fault::DropLastOperator ? faulty_check(action, f) : check_condition(action, f);
    if (check.violation && !verify_certificate(action, f, *check.violation))
      return fail("checker certificate does not verify");

    const OracleResult oracle = oracle_feasible(action, f, Ring::Rational);
    if (oracle.feasible != check.pass())
      return fail(std::string("checker says ") + (check.pass() ? "pass" : "violation") +
                  ", rational oracle says " + (oracle.feasible ? "feasible" : "infeasible"));
    if (oracle.feasible && !verify_decomposition(action, f, oracle.decomposition.parts))
      return fail("oracle decomposition does not verify");

    const DecomposeResult built = decompose(action, f);
    if (const auto* d = std::get_if<Decomposition>(&built)) {
      if (!check.pass()) return fail("constructor succeeded on a violating instance");
      const VerifyResult v = verify_decomposition(action, f, d->parts);
      if (!v) return fail("constructed decomposition does not verify: " + v.reason);
      const std::string m = check_m_bound(action, f, d->parts);
      if (!m.empty()) return fail(m);
      out.m_bound_checked = all_integers(f);
    } else {
      if (check.pass()) return fail("constructor refused an instance the checker passed");
      if (!verify_certificate(action, f, std::get<ViolationCertificate>(built)))
        return fail("constructor certificate does not verify");
    }
    out.decomposable = check.pass();

    if (restricted_orders_at_most(action, 64)) {
      CheckOptions opts;
      opts.mode = CheckMode::Exhaustive;
      opts.exhaustive_budget = 200'000;
      try {
        const CheckResult ex = check_condition(action, f, opts);
        if (ex.pass() != check.pass()) return fail("generator and exhaustive modes disagree");
        if (ex.violation && !verify_certificate(action, f, *ex.violation))
          return fail("exhaustive certificate does not verify");
        out.exhaustive_compared = true;
      } catch (const CapExceededError&) {
      }
    }
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())) + ": " + e.what());
  }
  return out;
}

namespace {

struct Repro {
  std::size_t size;
  std::vector<std::vector<Point>> gens;
  FnVec f;
};

bool fails(const Repro& r, Fault fault) {
  try {
    return !cross_check(Action::validate(r.size, r.gens), r.f, fault).agree;
  } catch (const Error&) {
    return false;
  }
}

Repro minimize(Repro r, Fault fault) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < r.gens.size(); ++j) {
      Repro t = r;
      t.gens.erase(t.gens.begin() + static_cast<long>(j));
      if (fails(t, fault)) {
        r = std::move(t);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // Keep a single orbit of the full group, relabeled to 0..k-1.
    const Action a = Action::validate(r.size, r.gens);
    const OrbitPartition orbits = orbit_partition(a);
    for (std::size_t o = 0; o < orbits.count() && orbits.count() > 1; ++o) {
      const auto& orbit = orbits.orbits[o];
      const OrbitView view(r.size, orbit);
      Repro t{orbit.size(), {}, {}};
      for (const auto& g : a.generators()) {
        const Permutation local = view.restrict(g);
        t.gens.emplace_back(local.images().begin(), local.images().end());
      }
      for (Point x : orbit) t.f.push_back(r.f[x]);
      if (fails(t, fault)) {
        r = std::move(t);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t x = 0; x < r.f.size(); ++x) {
      if (r.f[x].is_zero()) continue;
      Repro t = r;
      t.f[x] = Rational();
      if (fails(t, fault)) {
        r = std::move(t);
        changed = true;
        break;
      }
    }
  }
  return r;
}

const char* kind_name(FnKind kind) {
  switch (kind) {
    case FnKind::InvariantSum: return "invariant_sum";
    case FnKind::Perturbed: return "perturbed";
    case FnKind::Random: return "random";
  }
  return "?";
}

}  // namespace

Report fuzz(const FuzzOptions& options) {
  Report report;
  if (options.count == 0 || options.max_carrier < 1 || options.max_gens < 1 ||
      options.max_gens > kDefaultPartitionCap) {
    report.verdict = Verdict::Error;
    report.diagnostics["error"] = "SchemaError";
    report.diagnostics["message"] = "count, max-carrier must be positive and max-gens in 1..8";
    return report;
  }

  std::size_t agreements = 0, decomposable = 0, exhaustive = 0, m_checked = 0;
  std::size_t necessity = 0, necessity_ok = 0;
  std::map<std::string, std::size_t> families;
  std::map<std::string, std::size_t> kinds;
  Json first_failure = nullptr;
  Json failures = Json::array();

  for (std::size_t i = 0; i < options.count; ++i) {
    const std::uint64_t seed = instance_seed(options.seed, i);
    FuzzRng rng(seed);
    FuzzCase c = random_case(rng, options.max_carrier, options.max_gens);
    ++families[c.family];
    ++kinds[kind_name(c.kind)];
    CaseOutcome outcome = cross_check(c.action, c.f, options.fault);
    if (outcome.agree && c.kind == FnKind::InvariantSum) {
      ++necessity;
      if (outcome.decomposable) {
        ++necessity_ok;
      } else {
        outcome.agree = false;
        outcome.problem = "sum of invariant parts reported as not decomposable";
      }
    } else if (c.kind == FnKind::InvariantSum) {
      ++necessity;
    }
    if (outcome.agree) {
      ++agreements;
      decomposable += outcome.decomposable ? 1 : 0;
      exhaustive += outcome.exhaustive_compared ? 1 : 0;
      m_checked += outcome.m_bound_checked ? 1 : 0;
      continue;
    }
    failures.push_back(seed);
    if (!first_failure.is_null()) continue;
    Repro r{c.action.carrier_size(), {}, c.f};
    for (const auto& g : c.action.generators()) r.gens.emplace_back(g.images().begin(), g.images().end());
    r = minimize(std::move(r), options.fault);
    Instance inst;
    inst.mode = Mode::FiniteAction;
    inst.size = r.size;
    inst.perms = r.gens;
    inst.f = r.f;
    Json fail;
    fail["index"] = i;
    fail["seed"] = seed;
    fail["problem"] = outcome.problem;
    fail["reproducer"] = Json::parse(serialize_instance(inst));
    first_failure = std::move(fail);
  }

  // Window instances: necessity on windows, periodic sums feasible in both
  // rings, and passes that the linear system nevertheless rejects (findings).
  const std::size_t window_count = std::max<std::size_t>(1, options.count / 4);
  std::size_t window_ok = 0;
  Json findings = Json::array();
  for (std::size_t i = 0; i < window_count; ++i) {
    const std::uint64_t seed = instance_seed(options.seed ^ 0x5eedULL, i);
    FuzzRng rng(seed);
    const bool periodic = rng.chance(50);
    WindowInstance w;
    if (periodic) {
      w = random_periodic_window(rng, 12, 3, 2);
    } else {
      w = random_periodic_window(rng, 6, 3, 1);
      w.window = static_cast<std::size_t>(rng.uniform(1, 30));
      w.values = random_values(rng, w.window, false);
    }
    std::string problem;
    try {
      const WindowCheck check = check_window(w);
      const WindowSolution rat = solve_window(w, Ring::Rational);
      if (rat.feasible && !check.pass()) problem = "window violation on a feasible instance";
      if (periodic) {
        const WindowSolution integer = solve_window(w, Ring::Integer);
        if (!check.pass() || !rat.feasible || !integer.feasible)
          problem = "periodic window instance rejected";
      }
      if (problem.empty() && check.pass() && check.untestable.empty() && !rat.feasible)
        findings.push_back(seed);
    } catch (const Error& e) {
      problem = std::string(to_string(e.kind())) + ": " + e.what();
    }
    if (problem.empty()) {
      ++window_ok;
    } else {
      failures.push_back(seed);
      if (first_failure.is_null()) {
        Json fail;
        fail["window_index"] = i;
        fail["seed"] = seed;
        fail["problem"] = problem;
        Instance inst;
        inst.mode = Mode::ZWindow;
        inst.window_periods = w.periods;
        inst.window = w.window;
        inst.f = w.values;
        fail["reproducer"] = Json::parse(serialize_instance(inst));
        first_failure = std::move(fail);
      }
    }
  }

  const bool ok = failures.empty();
  report.verdict = ok ? Verdict::ConditionsOnly : Verdict::InternalError;
  Json& d = report.diagnostics;
  d["seed"] = options.seed;
  d["count"] = options.count;
  d["max_carrier"] = options.max_carrier;
  d["max_gens"] = options.max_gens;
  d["fault"] = options.fault == Fault::None ? "none" : "drop-last-operator";
  d["agreements"] = agreements;
  d["disagreements"] = options.count - agreements;
  d["decomposable"] = decomposable;
  d["not_decomposable"] = agreements - decomposable;
  d["families"] = families;
  d["function_kinds"] = kinds;
  d["necessity"] = {{"instances", necessity}, {"passed", necessity_ok}};
  d["exhaustive_compared"] = exhaustive;
  d["m_bound_checked"] = m_checked;
  d["windows"] = {{"instances", window_count}, {"agreements", window_ok}, {"findings", findings}};
  d["failing_seeds"] = failures;
  d["first_failure"] = first_failure;
  return report;
}

}  // namespace perdecomp
