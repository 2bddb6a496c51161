#include <algorithm>
#include <set>

#include "doctest.h"
#include "perdecomp/error.hpp"
#include "perdecomp/fuzz.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("validate_action examples") {
  const Action a = z2z2();
  CHECK(a.generator(0).images()[0] == 2);
  const std::vector<Point> expect3{3, 2, 1, 0};
  CHECK(std::equal(expect3.begin(), expect3.end(), a.generator(2).images().begin()));

  CHECK_NOTHROW(Action::validate(2, {{1, 0}, {1, 0}}));

  try {
    Action::validate(3, {{1, 2, 0}, {1, 0, 2}});
    FAIL("expected NonCommuting");
  } catch (const NonCommutingError& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 1);
    CHECK(e.point == 0);
  }
  try {
    Action::validate(3, {{1, 1, 0}});
    FAIL("expected NonBijective");
  } catch (const NonBijectiveError& e) {
    CHECK(e.generator == 0);
    CHECK(e.point == 1);
  }
  CHECK_THROWS_AS(Action::validate(3, {{0, 1}}), Error);
  CHECK_THROWS_AS(Action::validate(2, {{0, 5}}), Error);
}

TEST_CASE("orbit_partition examples") {
  const Action a = z2z2();
  CHECK(orbit_partition(a).orbits == std::vector<std::vector<Point>>{{0, 1, 2, 3}});
  const std::vector<std::size_t> first{0};
  CHECK(orbit_partition(a, first).orbits == std::vector<std::vector<Point>>{{0, 2}, {1, 3}});
  const Action z6 = cyclic(6, {2});
  CHECK(orbit_partition(z6).orbits == std::vector<std::vector<Point>>{{0, 2, 4}, {1, 3, 5}});
  try {
    orbit_partition(a, std::vector<std::size_t>{});
    FAIL("expected EmptySubset");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptySubset);
  }
}

TEST_CASE("cyclic_subgroup examples") {
  const Action z6 = cyclic(6, {2, 3});
  CHECK(cyclic_subgroup(z6, z6.generator_element(0)).order == 3);
  CHECK(cyclic_subgroup(z6, z6.identity()).order == 1);
  const auto t3 = cyclic_subgroup(z2z2(), z2z2().generator_element(2));
  CHECK(t3.order == 2);
  CHECK(t3.powers.front().is_identity());
}

TEST_CASE("block_lcm_generator examples") {
  const Action a = z2z2();
  const std::vector<Point> all{0, 1, 2, 3};
  const std::vector<std::size_t> b12{0, 1};
  CHECK(block_lcm_generator(a, all, b12).is_identity());
  const std::vector<std::size_t> b3{2};
  CHECK(block_lcm_generator(a, all, b3).perm == a.generator(2));

  const Action z12 = cyclic(12, {2, 3});
  std::vector<Point> orbit(12);
  for (Point x = 0; x < 12; ++x) orbit[x] = x;
  const GroupElement s = block_lcm_generator(z12, orbit, b12);
  CHECK(s.perm(0) == 6);
  CHECK(z12.element(s.word).perm == s.perm);
  CHECK_THROWS_AS(block_lcm_generator(z12, orbit, std::vector<std::size_t>{}), Error);
}

TEST_CASE("set partitions follow the Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto parts = enumerate_set_partitions(n);
    CHECK(parts.size() == bell[n]);
    std::set<std::vector<std::vector<std::size_t>>> seen;
    for (const auto& p : parts) {
      std::vector<std::size_t> cover;
      for (const auto& b : p.blocks) {
        CHECK_FALSE(b.empty());
        cover.insert(cover.end(), b.begin(), b.end());
      }
      std::sort(cover.begin(), cover.end());
      std::vector<std::size_t> expect(n);
      for (std::size_t i = 0; i < n; ++i) expect[i] = i;
      CHECK(cover == expect);
      seen.insert(p.blocks);
    }
    CHECK(seen.size() == parts.size());
  }
  CHECK(enumerate_set_partitions(3).front().blocks.size() == 1);
  CHECK(enumerate_set_partitions(3).back().blocks.size() == 3);
  CHECK_THROWS_AS(enumerate_set_partitions(9), CapExceededError);
}

TEST_CASE("permutation arithmetic") {
  const Permutation p({1, 2, 0, 4, 3});
  CHECK(p.order() == 6);
  CHECK(p.pow(6).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  CHECK(p * p.inverse() == Permutation::identity(5));
  CHECK(p.pow(7) == p);
  CHECK((p * p)(0) == 2);
}

TEST_CASE("random actions: commuting elements, orbit refinement, lcm generators") {
  FuzzRng rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const Action a = random_action(rng, 30, 4);
    const std::size_t n = a.generator_count();
    std::vector<std::int64_t> w1(n), w2(n);
    for (auto& x : w1) x = rng.uniform(-4, 4);
    for (auto& x : w2) x = rng.uniform(-4, 4);
    const GroupElement s = a.element(w1), t = a.element(w2);
    CHECK(s.perm * t.perm == t.perm * s.perm);

    const OrbitPartition full = orbit_partition(a);
    std::vector<std::size_t> subset{static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))};
    for (const auto& orbit : orbit_partition(a, subset).orbits) {
      const std::size_t o = full.orbit_of[orbit.front()];
      for (Point x : orbit) CHECK(full.orbit_of[x] == o);
    }

    for (const auto& orbit : full.orbits) {
      const OrbitView view(a.carrier_size(), orbit);
      std::vector<std::size_t> block;
      for (std::size_t j = 0; j < n; ++j)
        if (rng.chance(60)) block.push_back(j);
      if (block.empty()) block.push_back(0);
      const GroupElement g = block_lcm_generator(a, orbit, block);
      const Permutation local = view.restrict(g.perm);
      for (std::size_t i : block) {
        const auto c = cyclic_subgroup(a, a.generator_element(i));
        bool member = false;
        for (const auto& e : c.powers) member = member || view.restrict(e.perm) == local;
        CHECK(member);
      }
      std::vector<Permutation> powers;
      Permutation cur = Permutation::identity(orbit.size());
      do {
        powers.push_back(cur);
        cur = cur * local;
      } while (!cur.is_identity());
      for (const auto& e : block_intersection(a, orbit, block)) {
        const Permutation r = view.restrict(e.perm);
        CHECK(std::find(powers.begin(), powers.end(), r) != powers.end());
      }
      if (block.size() == 1)
        CHECK(local == view.restrict(a.generator(block.front())));
    }
  }
}
