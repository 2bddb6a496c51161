#include <numeric>

#include "doctest.h"
#include "perdecomp/decompose.hpp"
#include "perdecomp/error.hpp"
#include "perdecomp/fuzz.hpp"
#include "support.hpp"

using namespace testing;

namespace {

PeriodVector pv(std::initializer_list<const char*> coords) { return rats(coords); }

std::vector<std::size_t> oneb(std::initializer_list<std::size_t> v) { return v; }

}  // namespace

TEST_CASE("finite_abelian_action examples") {
  const Action a = z2z2();
  const std::vector<std::vector<Point>> expect{{2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}};
  for (std::size_t j = 0; j < 3; ++j) {
    const auto img = a.generator(j).images();
    CHECK(std::vector<Point>(img.begin(), img.end()) == expect[j]);
  }
  const Action z6 = cyclic(6, {2, 3});
  CHECK(z6.generator(0)(5) == 1);
  CHECK(z6.generator(1)(4) == 1);
  const Action one = cyclic(1, {7});
  CHECK(one.carrier_size() == 1);
  CHECK(one.generator(0).is_identity());
  CHECK(cyclic(5, {-1}).generator(0)(0) == 4);

  try {
    cyclic(0, {1});
    FAIL("expected BadModulus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadModulus);
  }
  const std::vector<std::int64_t> moduli{2, 2};
  const std::vector<std::vector<std::int64_t>> wrong{{1}};
  CHECK_THROWS_AS(finite_abelian_action(moduli, wrong), Error);
}

TEST_CASE("commensurability_classes examples") {
  const std::vector<PeriodVector> p{pv({"1", "0"}), pv({"2", "0"}), pv({"0", "1"})};
  const auto c = commensurability_classes(p);
  CHECK(c.classes == std::vector<std::vector<std::size_t>>{oneb({0, 1}), oneb({2})});
  CHECK(c.primitive[0] == pv({"1", "0"}));
  CHECK(c.multiple[1] == q("2"));

  const std::vector<PeriodVector> same{pv({"3/2"}), pv({"3/2"}), pv({"3/2"})};
  CHECK(commensurability_classes(same).classes.size() == 1);
  const std::vector<PeriodVector> single{pv({"0", "-5"})};
  const auto s = commensurability_classes(single);
  CHECK(s.classes.size() == 1);
  CHECK(s.primitive[0] == pv({"0", "1"}));
  CHECK(s.multiple[0] == q("-5"));

  const std::vector<PeriodVector> zero{pv({"1"}), pv({"0"})};
  try {
    commensurability_classes(zero);
    FAIL("expected ZeroPeriod");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroPeriod);
  }
}

TEST_CASE("vector_lcm examples") {
  const std::vector<PeriodVector> a{pv({"1", "0"}), pv({"2", "0"})};
  CHECK(vector_lcm(a) == pv({"2", "0"}));
  const std::vector<PeriodVector> b{pv({"3"})};
  CHECK(vector_lcm(b) == pv({"3"}));
  const std::vector<PeriodVector> c{pv({"1/2"}), pv({"1/3"})};
  CHECK(vector_lcm(c) == pv({"1"}));
  const std::vector<PeriodVector> d{pv({"-4", "6"}), pv({"6", "-9"})};
  CHECK(vector_lcm(d) == pv({"12", "-18"}));
  const std::vector<PeriodVector> bad{pv({"1", "0"}), pv({"0", "1"})};
  try {
    vector_lcm(bad);
    FAIL("expected NotParallel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotParallel);
  }
}

TEST_CASE("vector_lcm is an integer multiple of every class member") {
  FuzzRng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const PeriodVector dir{Rational(rng.uniform(-3, 3)), Rational(rng.uniform(1, 4))};
    std::vector<PeriodVector> members;
    const auto k = rng.uniform(1, 4);
    for (int i = 0; i < k; ++i) {
      Rational c(BigInt(rng.uniform(1, 9)), BigInt(rng.uniform(1, 6)));
      if (rng.chance(30)) c = -c;
      members.push_back({c * dir[0], c * dir[1]});
    }
    const PeriodVector l = vector_lcm(members);
    for (const auto& m : members) {
      const Rational ratio = l[1] / m[1];
      CHECK(ratio.is_integer());
      CHECK(l[0] == ratio * m[0]);
    }
  }
}

TEST_CASE("generate_conditions examples") {
  const std::vector<PeriodVector> sqrt2{pv({"1", "0"}), pv({"2", "0"}), pv({"0", "1"})};
  const ConditionList list = generate_conditions(sqrt2);
  CHECK(list.trivial_count == 3);
  REQUIRE(list.entries.size() == 2);
  CHECK(list.entries[0].shifts == std::vector<PeriodVector>{pv({"2", "0"}), pv({"0", "1"})});
  CHECK(list.entries[1].shifts == sqrt2);

  const std::vector<PeriodVector> incomm{pv({"1", "0", "0"}), pv({"0", "1", "0"}),
                                         pv({"0", "0", "1"})};
  const ConditionList only = generate_conditions(incomm);
  REQUIRE(only.entries.size() == 1);
  CHECK(only.entries[0].partition.blocks.size() == 3);
  CHECK(only.trivial_count == 4);

  const std::vector<PeriodVector> single{pv({"5"})};
  const ConditionList s = generate_conditions(single);
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries[0].shifts == std::vector<PeriodVector>{pv({"5"})});

  const std::vector<PeriodVector> nine(9, pv({"1"}));
  CHECK_THROWS_AS(generate_conditions(nine), CapExceededError);
}

TEST_CASE("integer line periods: every partition is nontrivial with integer lcm shifts") {
  FuzzRng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<PeriodVector> periods;
    std::vector<std::int64_t> raw;
    const auto n = rng.uniform(1, 4);
    for (int i = 0; i < n; ++i) {
      raw.push_back(rng.uniform(1, 12));
      periods.push_back({Rational(raw.back())});
    }
    const ConditionList list = generate_conditions(periods);
    CHECK(list.trivial_count == 0);
    CHECK(list.entries.size() + list.duplicate_count ==
          enumerate_set_partitions(periods.size()).size());
    for (const auto& e : list.entries)
      for (std::size_t b = 0; b < e.partition.blocks.size(); ++b) {
        std::int64_t l = 1;
        for (std::size_t i : e.partition.blocks[b]) l = std::lcm(l, raw[i]);
        CHECK(e.shifts[b] == PeriodVector{Rational(l)});
      }
  }
}

TEST_CASE("check_window examples") {
  WindowInstance trap{{3, 3}, 10, {}};
  for (int x = 0; x < 10; ++x) trap.values.emplace_back(x);
  const WindowCheck r = check_window(trap);
  REQUIRE_FALSE(r.pass());
  CHECK(r.violation->partition.blocks == std::vector<std::vector<std::size_t>>{{0, 1}});
  CHECK(r.violation->shifts == std::vector<std::int64_t>{3});
  CHECK(r.violation->witness == 0);
  CHECK(r.violation->value == q("3"));

  WindowInstance ok{{2, 3}, 12, {}};
  for (int x = 0; x < 12; ++x) ok.values.emplace_back((x % 2 == 0) + (x % 3 == 0));
  CHECK(check_window(ok).pass());

  const WindowInstance short_window{{2, 3}, 2, ints({0, 1})};
  const WindowCheck s = check_window(short_window);
  CHECK(s.pass());
  CHECK(s.evaluated == 0);
  CHECK(s.untestable.size() == 2);

  const WindowInstance bad{{2, 0}, 1, ints({0})};
  CHECK_THROWS_AS(check_window(bad), Error);
  const WindowInstance mismatch{{2}, 3, ints({0})};
  CHECK_THROWS_AS(check_window(mismatch), Error);
}

TEST_CASE("solve_window examples") {
  WindowInstance ok{{2, 3}, 12, {}};
  for (int x = 0; x < 12; ++x) ok.values.emplace_back((x % 2 == 0) + (x % 3 == 0));
  const WindowSolution s = solve_window(ok, Ring::Integer);
  REQUIRE(s.feasible);
  REQUIRE(s.parts.size() == 2);
  CHECK(s.parts[0].size() == 2);
  CHECK(s.parts[1].size() == 3);
  for (int x = 0; x < 12; ++x) CHECK(s.parts[0][x % 2] + s.parts[1][x % 3] == ok.values[x]);

  for (std::size_t w : {6u, 7u}) {
    WindowInstance lin{{2, 3}, w, {}};
    for (std::size_t x = 0; x < w; ++x) lin.values.emplace_back(static_cast<long long>(x));
    CHECK_FALSE(solve_window(lin, Ring::Rational).feasible);
    CHECK_FALSE(solve_window(lin, Ring::Integer).feasible);
  }
  const WindowInstance frac{{2}, 2, rats({"1/2", "0"})};
  try {
    solve_window(frac, Ring::Integer);
    FAIL("expected NonIntegerInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegerInput);
  }
}

TEST_CASE("window consistency and necessity on random instances") {
  FuzzRng rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const WindowInstance w = random_periodic_window(rng, 8, 3, 2);
    CHECK(check_window(w).pass());
    CHECK(solve_window(w, Ring::Rational).feasible);
    CHECK(solve_window(w, Ring::Integer).feasible);
  }
  for (int trial = 0; trial < 200; ++trial) {
    WindowInstance w = random_periodic_window(rng, 5, 3, 1);
    w.window = static_cast<std::size_t>(rng.uniform(1, 16));
    w.values.clear();
    for (std::size_t x = 0; x < w.window; ++x) w.values.emplace_back(rng.uniform(-2, 2));
    if (solve_window(w, Ring::Rational).feasible) CHECK(check_window(w).pass());
  }
}
