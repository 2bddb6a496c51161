#include <numeric>

#include "doctest.h"
#include "perdecomp/decompose.hpp"
#include "perdecomp/error.hpp"
#include "perdecomp/fuzz.hpp"
#include "support.hpp"

using namespace testing;

namespace {

const Permutation kPlus3({3, 4, 5, 0, 1, 2});
const Permutation kPlus2({2, 3, 4, 5, 0, 1});

}  // namespace

TEST_CASE("solve_lift examples") {
  CHECK(is_zero(solve_lift(kPlus3, kPlus2, FnVec(6))));

  const FnVec g = solve_lift(kPlus3, kPlus2, ints({1, -1, 0, 1, -1, 0}));
  CHECK(g == ints({1, 2, 2, 1, 2, 2}));
  CHECK(is_zero(difference(kPlus3, g)));
  CHECK(difference(kPlus2, g) == ints({1, -1, 0, 1, -1, 0}));

  try {
    solve_lift(kPlus3, kPlus2, ints({1, 1, 1, 1, 1, 1}));
    FAIL("expected PreconditionViolated");
  } catch (const PreconditionViolatedError& e) {
    CHECK(e.sum == "3");
    CHECK(e.cycle.size() == 3);
  }
  try {
    solve_lift(kPlus3, kPlus2, ints({1, 0, 0, 0, 0, 0}));
    FAIL("expected NotTPeriodic");
  } catch (const NotTPeriodicError& e) {
    CHECK(e.witness == 0);
  }
}

TEST_CASE("make_lift_problem exposes the quotient data") {
  const LiftProblem p = make_lift_problem(kPlus3, kPlus2, ints({1, -1, 0, 1, -1, 0}));
  CHECK(p.quotient == std::vector<std::vector<Point>>{{0, 3}, {1, 4}, {2, 5}});
  CHECK(p.induced_map == std::vector<std::size_t>{2, 0, 1});
  CHECK(p.induced_values == ints({1, -1, 0}));
  CHECK(p.representatives == std::vector<std::size_t>{0});
}

TEST_CASE("decompose examples") {
  const Action a = z2z2();
  const FnVec f = ints({0, 1, 1, 1});
  const DecomposeResult r = decompose(a, f);
  REQUIRE(std::holds_alternative<Decomposition>(r));
  CHECK(verify_decomposition(a, f, std::get<Decomposition>(r).parts).valid);
  CHECK(verify_decomposition(a, f, half_valued_triple()).valid);

  const Action z6 = cyclic(6, {2, 3});
  const FnVec g = ints({2, 0, 1, 1, 1, 0});
  const DecomposeResult r6 = decompose(z6, g);
  REQUIRE(std::holds_alternative<Decomposition>(r6));
  CHECK(verify_decomposition(z6, g, std::get<Decomposition>(r6).parts).valid);
  const std::vector<FnVec> witness{ints({1, 0, 1, 0, 1, 0}), ints({1, 0, 0, 1, 0, 0})};
  CHECK(verify_decomposition(z6, g, witness).valid);

  const Action single = cyclic(4, {2});
  const FnVec h = ints({1, 5, 1, 5});
  const DecomposeResult r1 = decompose(single, h);
  REQUIRE(std::holds_alternative<Decomposition>(r1));
  CHECK(std::get<Decomposition>(r1).parts == std::vector<FnVec>{h});

  const DecomposeResult bad = decompose(z6, ints({1, 0, 0, 0, 0, 0}));
  REQUIRE(std::holds_alternative<ViolationCertificate>(bad));
  CHECK(verify_certificate(z6, ints({1, 0, 0, 0, 0, 0}), std::get<ViolationCertificate>(bad)));
}

TEST_CASE("verify_decomposition reports the offending point") {
  const Action a = z2z2();
  auto parts = half_valued_triple();
  parts[0][1] += q("1");
  const VerifyResult v = verify_decomposition(a, ints({0, 1, 1, 1}), parts);
  CHECK_FALSE(v.valid);
  CHECK(v.part == 0);
  CHECK((v.witness == 1 || v.witness == 3));

  const Action none = Action::validate(3, {});
  CHECK(verify_decomposition(none, FnVec(3), std::vector<FnVec>{}).valid);
  CHECK_FALSE(verify_decomposition(none, ints({0, 1, 0}), std::vector<FnVec>{}).valid);
  CHECK_THROWS_AS(verify_decomposition(a, ints({0, 1, 1, 1}), std::vector<FnVec>{ints({0})}), Error);
}

TEST_CASE("oracle_feasible examples") {
  const Action a = z2z2();
  const OracleResult r = oracle_feasible(a, ints({0, 1, 1, 1}), Ring::Rational);
  REQUIRE(r.feasible);
  CHECK(verify_decomposition(a, ints({0, 1, 1, 1}), r.decomposition.parts).valid);

  const OracleResult i = oracle_feasible(a, ints({0, 1, 1, 1}), Ring::Integer);
  CHECK_FALSE(i.feasible);
  const auto [integral, value] = check_refutation(a, ints({0, 1, 1, 1}), i.refutation);
  CHECK(integral);
  CHECK_FALSE(value.is_integer());

  CHECK_FALSE(oracle_feasible(cyclic(6, {2, 3}), ints({1, 0, 0, 0, 0, 0}), Ring::Rational).feasible);
  try {
    oracle_feasible(a, rats({"1/2", "0", "0", "0"}), Ring::Integer);
    FAIL("expected NonIntegerInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegerInput);
  }

  const OracleResult z6 = oracle_feasible(cyclic(6, {2, 3}), ints({2, 0, 1, 1, 1, 0}), Ring::Integer);
  REQUIRE(z6.feasible);
  for (const auto& p : z6.decomposition.parts) CHECK(all_integers(p));
}

TEST_CASE("m_bound examples") {
  const std::vector<Point> one{0};
  const Action single = cyclic(1, {0});
  const std::vector<std::size_t> o1{0};
  CHECK(m_bound(single, one, o1).value == 1);

  const std::vector<Point> four{0, 1, 2, 3};
  const std::vector<std::size_t> o3{0, 1, 2};
  const MBound m = m_bound(z2z2(), four, o3);
  CHECK(m.value == 4);
  REQUIRE(m.trace.size() == 3);
  CHECK(m.trace[0].second == 2);
  CHECK(m.trace[1].second == 2);
  CHECK(m.trace[2].second == 1);

  std::vector<Point> six(6);
  std::iota(six.begin(), six.end(), Point{0});
  const std::vector<std::size_t> o2{0, 1};
  CHECK(m_bound(cyclic(6, {2, 3}), six, o2).value == 3);
}

TEST_CASE("bezout plan and combination") {
  const std::vector<BigInt> m23{2, 3};
  const BezoutPlan plan = make_bezout_plan(m23);
  CHECK(plan.coefficients == std::vector<BigInt>{-1, 1});
  const std::vector<BigInt> m46{4, 6};
  CHECK_THROWS_AS(make_bezout_plan(m46), Error);

  const Action a = z2z2();
  const Decomposition d{half_valued_triple()};
  const std::vector<Decomposition> one{d};
  const std::vector<BigInt> m1{1};
  CHECK(bezout_combine(one, make_bezout_plan(m1)) == d);
  const std::vector<Decomposition> twice{d, d};
  CHECK(bezout_combine(twice, plan) == d);

  CHECK_THROWS_AS(bezout_combine(one, plan), Error);
  BezoutPlan broken = plan;
  broken.coefficients = {1, 1};
  try {
    bezout_combine(twice, broken);
    FAIL("expected NotUnityCombination");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnityCombination);
  }
}

TEST_CASE("bezout_combine turns half- and third-valued decompositions integral") {
  // f on Z6 = [x even] + [x = 0 mod 3]; shift the integer witness by +-k/2 and
  // +-k/3 constants so the inputs live in (1/2)Z and (1/3)Z.
  const Action z6 = cyclic(6, {2, 3});
  const FnVec f = ints({2, 0, 1, 1, 1, 0});
  const std::vector<FnVec> base{ints({1, 0, 1, 0, 1, 0}), ints({1, 0, 0, 1, 0, 0})};
  auto shifted = [&](const Rational& c) {
    Decomposition d{base};
    for (auto& v : d.parts[0]) v += c;
    for (auto& v : d.parts[1]) v -= c;
    return d;
  };
  const std::vector<Decomposition> inputs{shifted(q("1/2")), shifted(q("2/3"))};
  CHECK(verify_decomposition(z6, f, inputs[0].parts).valid);
  CHECK(verify_decomposition(z6, f, inputs[1].parts).valid);
  const std::vector<BigInt> m23{2, 3};
  const Decomposition out = bezout_combine(inputs, make_bezout_plan(m23));
  CHECK(verify_decomposition(z6, f, out.parts).valid);
  for (const auto& p : out.parts) CHECK(all_integers(p));
}

TEST_CASE("lift contract on random problems") {
  FuzzRng rng(61);
  int valid = 0, rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Action a = random_action(rng, 30, 2);
    if (a.generator_count() < 2) continue;
    const Permutation& t = a.generator(0);
    const Permutation& s = a.generator(1);
    // G = Delta_S of a T-invariant function satisfies every cycle-sum condition.
    const FnVec base = random_invariant(rng, t, rng.chance(30));
    const FnVec g = difference(s, base);
    const FnVec lifted = solve_lift(t, s, g);
    CHECK(is_zero(difference(t, lifted)));
    CHECK(difference(s, lifted) == g);
    ++valid;

    // Perturb one <T>-class by a constant: its induced cycle sum becomes
    // nonzero.
    const OrbitPartition cls = cycles_of(t);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cls.count()) - 1));
    FnVec bad = g;
    for (Point x : cls.orbits[k]) bad[x] += 1;
    try {
      solve_lift(t, s, bad);
      FAIL("perturbed lift accepted");
    } catch (const PreconditionViolatedError& e) {
      Rational sum;
      for (Point x : e.cycle) sum += bad[x];
      CHECK(sum.to_string() == e.sum);
      CHECK_FALSE(sum.is_zero());
      ++rejected;
    }
  }
  CHECK(valid > 100);
  CHECK(rejected == valid);
}

TEST_CASE("decompose is deterministic and respects the denominator bound") {
  FuzzRng rng(71);
  for (int trial = 0; trial < 150; ++trial) {
    const Action a = random_action(rng, 36, 4);
    const FnVec f = random_invariant_sum(rng, a, rng.chance(50));
    const DecomposeResult r1 = decompose(a, f), r2 = decompose(a, f);
    REQUIRE(std::holds_alternative<Decomposition>(r1));
    const auto& parts = std::get<Decomposition>(r1).parts;
    CHECK(std::get<Decomposition>(r2).parts == parts);
    CHECK(verify_decomposition(a, f, parts).valid);
    const Rational d(common_denominator(f));
    std::vector<std::size_t> order(a.generator_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (const auto& orbit : orbit_partition(a).orbits) {
      const Rational m = Rational(m_bound(a, orbit, order).value) * d;
      for (const auto& p : parts)
        for (Point x : orbit) CHECK((p[x] * m).is_integer());
    }
  }
}
