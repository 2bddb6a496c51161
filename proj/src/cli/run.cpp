#include "perdecomp/run.hpp"

#include <chrono>
#include <exception>

#include "perdecomp/error.hpp"
#include "perdecomp/numeric.hpp"

namespace perdecomp {

using Json = nlohmann::ordered_json;

std::optional<Command> parse_command(std::string_view name) {
  if (name == "validate") return Command::Validate;
  if (name == "check") return Command::Check;
  if (name == "decompose") return Command::Decompose;
  if (name == "oracle") return Command::Oracle;
  if (name == "conditions") return Command::Conditions;
  return std::nullopt;
}

namespace {

bool is_finite(Mode mode) { return mode == Mode::FiniteAction || mode == Mode::AbelianFinite; }

[[noreturn]] void unsupported(const char* command, Mode mode) {
  throw Error(ErrorKind::ShapeMismatch,
              std::string(command) + " is not available for mode " + to_string(mode));
}

BigInt denominator_lcm(std::span<const FnVec> vectors) {
  BigInt out = 1;
  for (const auto& v : vectors)
    for (const auto& q : v) mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), q.denominator().get_mpz_t());
  return out;
}

Json orders_json(const Action& action) {
  Json arr = Json::array();
  for (const auto& g : action.generators()) arr.push_back(g.order());
  return arr;
}

Json shifts_json(const std::vector<PeriodVector>& shifts) {
  Json arr = Json::array();
  for (const auto& s : shifts) arr.push_back(values_json(s));
  return arr;
}

Json conditions_json(const ConditionList& list) {
  Json arr = Json::array();
  for (const auto& e : list.entries) {
    Json entry;
    entry["partition"] = partition_json(e.partition);
    entry["shifts"] = shifts_json(e.shifts);
    arr.push_back(std::move(entry));
  }
  return arr;
}

std::vector<PeriodVector> line_periods(const std::vector<std::int64_t>& periods) {
  std::vector<PeriodVector> out;
  for (std::int64_t a : periods) out.push_back({Rational(static_cast<long long>(a))});
  return out;
}

void attach_decomposition(Report& report, const Action& action, const FnVec& f,
                          std::vector<FnVec> parts) {
  const VerifyResult verdict = verify_decomposition(action, f, parts);
  if (!verdict)
    throw Error(ErrorKind::InternalInvariantFailure,
                "produced decomposition does not verify: " + verdict.reason);
  report.verdict = Verdict::Decomposable;
  report.diagnostics["input_denominator"] = denominator_lcm(std::span(&f, 1)).get_str();
  report.diagnostics["parts_denominator"] = denominator_lcm(parts).get_str();
  report.parts = std::move(parts);
}

Json m_bound_json(const Action& action) {
  std::vector<std::size_t> order(action.generator_count());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  const OrbitPartition orbits = orbit_partition(action);
  Json arr = Json::array();
  for (std::size_t o = 0; o < orbits.count(); ++o) {
    const MBound m = m_bound(action, orbits.orbits[o], order);
    Json entry;
    entry["orbit"] = o;
    entry["M"] = m.value.get_str();
    Json trace = Json::array();
    for (const auto& [gen, factor] : m.trace) trace.push_back(Json::array({gen + 1, factor}));
    entry["trace"] = std::move(trace);
    arr.push_back(std::move(entry));
  }
  return arr;
}

Json lattice_certificate(const FnVec& weights, const Rational& value) {
  Json doc;
  doc["kind"] = "integer_lattice";
  doc["weights"] = values_json(weights);
  doc["value"] = value.to_string();
  return doc;
}

void finite_oracle(Report& report, const Action& action, const FnVec& f, Ring ring) {
  report.diagnostics["method"] = "oracle";
  report.diagnostics["ring"] = ring == Ring::Rational ? "rational" : "integer";
  OracleResult result = oracle_feasible(action, f, ring);
  if (result.feasible) {
    attach_decomposition(report, action, f, std::move(result.decomposition.parts));
    return;
  }
  report.verdict = Verdict::NotDecomposable;
  if (ring == Ring::Integer) {
    const auto [integral, value] = check_refutation(action, f, result.refutation);
    if (!integral || value.is_integer())
      throw Error(ErrorKind::InternalInvariantFailure, "integer refutation does not verify");
    report.certificate = lattice_certificate(result.refutation, value);
    return;
  }
  const CheckResult check = check_condition(action, f);
  if (check.pass())
    throw Error(ErrorKind::InternalInvariantFailure,
                "linear oracle is infeasible but the condition holds");
  report.certificate = certificate_json(*check.violation);
}

void finite_decompose(Report& report, const Action& action, const FnVec& f,
                      const RunOptions& options) {
  const bool constructive =
      options.method == Method::Constructive ||
      (options.method == Method::Default && options.ring == Ring::Rational);
  if (!constructive) {
    finite_oracle(report, action, f, options.ring);
    return;
  }
  if (options.ring == Ring::Integer)
    throw Error(ErrorKind::NonIntegerInput,
                "the constructive method works over the rationals; use --oracle for --ring integer");
  report.diagnostics["method"] = "constructive";
  report.diagnostics["ring"] = "rational";
  DecomposeResult result = decompose(action, f);
  if (auto* cert = std::get_if<ViolationCertificate>(&result)) {
    report.verdict = Verdict::NotDecomposable;
    report.certificate = certificate_json(*cert);
    return;
  }
  attach_decomposition(report, action, f, std::move(std::get<Decomposition>(result).parts));
  report.diagnostics["m_bound"] = m_bound_json(action);
}

void window_solve(Report& report, const WindowInstance& w, const RunOptions& options) {
  if (options.method == Method::Constructive)
    throw Error(ErrorKind::ShapeMismatch,
                "z_window instances are solved by the linear oracle only");
  report.diagnostics["method"] = "oracle";
  report.diagnostics["ring"] = options.ring == Ring::Rational ? "rational" : "integer";
  WindowSolution sol = solve_window(w, options.ring);
  if (sol.feasible) {
    report.verdict = Verdict::Decomposable;
    report.diagnostics["input_denominator"] = denominator_lcm(std::span(&w.values, 1)).get_str();
    report.diagnostics["parts_denominator"] = denominator_lcm(sol.parts).get_str();
    report.parts = std::move(sol.parts);
    return;
  }
  report.verdict = Verdict::NotDecomposable;
  const WindowCheck check = check_window(w);
  if (check.violation) {
    report.certificate = window_certificate_json(w, *check.violation);
  } else if (options.ring == Ring::Integer && !sol.refutation.empty()) {
    Rational value;
    for (std::size_t x = 0; x < w.window; ++x) value += sol.refutation[x] * w.values[x];
    report.certificate = lattice_certificate(sol.refutation, value);
  } else {
    Json doc;
    doc["kind"] = "window_infeasible";
    report.certificate = std::move(doc);
  }
}

Report dispatch(Command command, const Instance& instance, const RunOptions& options) {
  Report report;
  report.diagnostics["mode"] = to_string(instance.mode);
  switch (command) {
    case Command::Validate: {
      report.verdict = Verdict::ConditionsOnly;
      if (is_finite(instance.mode)) {
        const Action action = build_action(instance);
        report.diagnostics["carrier"] = action.carrier_size();
        report.diagnostics["generators"] = action.generator_count();
        report.diagnostics["orbits"] = orbit_partition(action).count();
        report.diagnostics["orders"] = orders_json(action);
      } else if (instance.mode == Mode::ZWindow) {
        const WindowInstance w = build_window(instance);
        report.diagnostics["window"] = w.window;
        report.diagnostics["generators"] = w.periods.size();
      } else {
        const CommensurabilityClasses cls = commensurability_classes(instance.real_periods);
        Json classes = Json::array();
        for (const auto& c : cls.classes) {
          Json b = Json::array();
          for (std::size_t j : c) b.push_back(j + 1);
          classes.push_back(std::move(b));
        }
        report.diagnostics["classes"] = std::move(classes);
      }
      return report;
    }
    case Command::Check: {
      if (is_finite(instance.mode)) {
        const Action action = build_action(instance);
        CheckOptions opts;
        opts.mode = options.exhaustive ? CheckMode::Exhaustive : CheckMode::Generator;
        const CheckResult result = check_condition(action, instance.f, opts);
        report.diagnostics["check_mode"] = options.exhaustive ? "exhaustive" : "generator";
        report.diagnostics["chains_evaluated"] = result.chains_evaluated;
        report.diagnostics["trivial_skipped"] = result.trivial_skipped;
        if (result.pass()) {
          report.verdict = Verdict::ConditionsOnly;
          report.diagnostics["condition"] = "pass";
        } else {
          report.verdict = Verdict::NotDecomposable;
          report.diagnostics["condition"] = "violated";
          report.certificate = certificate_json(*result.violation);
        }
      } else if (instance.mode == Mode::ZWindow) {
        const WindowInstance w = build_window(instance);
        const WindowCheck result = check_window(w);
        report.diagnostics["conditions_evaluated"] = result.evaluated;
        Json untestable = Json::array();
        for (const auto& e : result.untestable) untestable.push_back(partition_json(e.partition));
        report.diagnostics["untestable"] = std::move(untestable);
        if (result.pass()) {
          report.verdict = Verdict::ConditionsOnly;
          report.diagnostics["condition"] = "pass";
        } else {
          report.verdict = Verdict::NotDecomposable;
          report.diagnostics["condition"] = "violated";
          report.certificate = window_certificate_json(w, *result.violation);
        }
      } else {
        unsupported("check", instance.mode);
      }
      return report;
    }
    case Command::Decompose:
    case Command::Oracle: {
      RunOptions opts = options;
      if (command == Command::Oracle) {
        if (options.method == Method::Constructive)
          throw Error(ErrorKind::ShapeMismatch, "oracle does not take --constructive");
        opts.method = Method::Oracle;
      }
      if (is_finite(instance.mode)) {
        finite_decompose(report, build_action(instance), instance.f, opts);
      } else if (instance.mode == Mode::ZWindow) {
        window_solve(report, build_window(instance), opts);
      } else {
        unsupported(command == Command::Oracle ? "oracle" : "decompose", instance.mode);
      }
      return report;
    }
    case Command::Conditions: {
      report.verdict = Verdict::ConditionsOnly;
      if (instance.mode == Mode::TfConditions || instance.mode == Mode::ZWindow) {
        const std::vector<PeriodVector> periods = instance.mode == Mode::TfConditions
                                                      ? instance.real_periods
                                                      : line_periods(instance.window_periods);
        const ConditionList list = generate_conditions(periods);
        report.diagnostics["conditions"] = conditions_json(list);
        report.diagnostics["trivial_count"] = list.trivial_count;
        report.diagnostics["duplicate_count"] = list.duplicate_count;
        return report;
      }
      const Action action = build_action(instance);
      const OrbitPartition orbits = orbit_partition(action);
      const auto partitions = enumerate_set_partitions(action.generator_count());
      Json per_orbit = Json::array();
      for (std::size_t o = 0; o < orbits.count(); ++o) {
        const auto& orbit = orbits.orbits[o];
        const OrbitView view(action.carrier_size(), orbit);
        Json conditions = Json::array();
        std::size_t trivial = 0;
        for (const auto& partition : partitions) {
          Json chosen = Json::array();
          bool is_trivial = false;
          for (const auto& block : partition.blocks) {
            const GroupElement g = block_lcm_generator(action, orbit, block);
            is_trivial = is_trivial || view.restrict(g.perm).is_identity();
            chosen.push_back(g.word);
          }
          if (is_trivial) {
            ++trivial;
            continue;
          }
          Json entry;
          entry["partition"] = partition_json(partition);
          entry["chosen"] = std::move(chosen);
          conditions.push_back(std::move(entry));
        }
        Json entry;
        entry["orbit"] = o;
        entry["size"] = orbit.size();
        entry["conditions"] = std::move(conditions);
        entry["trivial_count"] = trivial;
        per_orbit.push_back(std::move(entry));
      }
      report.diagnostics["orbits"] = std::move(per_orbit);
      return report;
    }
  }
  throw Error(ErrorKind::InternalInvariantFailure, "unknown command");
}

}  // namespace

Report run(Command command, const Instance& instance, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    report = dispatch(command, instance, options);
  } catch (const Error& e) {
    report = error_report(e);
  } catch (const std::bad_alloc&) {
    report = error_report(Error(ErrorKind::CapExceeded, "out of memory"));
  } catch (const std::exception& e) {
    report = error_report(Error(ErrorKind::InternalInvariantFailure, e.what()));
  }
  if (options.timings) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report.diagnostics["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return report;
}

Instance z2z2_instance() {
  Instance inst;
  inst.mode = Mode::AbelianFinite;
  inst.moduli = {2, 2};
  inst.translations = {{1, 0}, {0, 1}, {1, 1}};
  inst.f = {Rational(0), Rational(1), Rational(1), Rational(1)};
  return inst;
}

Report demo_z2z2() {
  const Instance inst = z2z2_instance();
  Report report = run(Command::Decompose, inst);
  if (report.verdict != Verdict::Decomposable) {
    report.verdict = Verdict::InternalError;
    return report;
  }
  const Action action = build_action(inst);
  const Rational h(1, 2);
  const std::vector<FnVec> halves = {
      {Rational(0), h, Rational(0), h},
      {Rational(0), Rational(0), h, h},
      {Rational(0), h, h, Rational(0)},
  };
  const bool halves_ok = verify_decomposition(action, inst.f, halves).valid;
  report.diagnostics["half_valued_triple_verifies"] = halves_ok;

  const Report integer = run(Command::Decompose, inst, {false, Method::Default, Ring::Integer});
  report.diagnostics["integer_verdict"] = to_string(integer.verdict);
  report.diagnostics["integer_certificate"] =
      integer.certificate ? *integer.certificate : Json(nullptr);
  if (!halves_ok || integer.verdict != Verdict::NotDecomposable)
    report.verdict = Verdict::InternalError;
  return report;
}

}  // namespace perdecomp
