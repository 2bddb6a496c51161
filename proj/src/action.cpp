#include "perdecomp/action.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "perdecomp/error.hpp"
#include "perdecomp/kernels.hpp"

namespace perdecomp {

// --- Permutation -----------------------------------------------------------

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation operator*(const Permutation& outer, const Permutation& inner) {
  std::vector<Point> out(inner.size());
  kernels::compose(outer.images_, inner.images_, out);
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::pow(std::int64_t exponent) const {
  Permutation base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                 : static_cast<std::uint64_t>(exponent);
  Permutation result = identity(images_.size());
  while (e != 0) {
    if (e & 1U) result = base * result;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

bool Permutation::is_identity() const { return kernels::is_identity(images_); }

std::uint64_t Permutation::order() const {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    const std::uint64_t g = std::gcd(result, len);
    const std::uint64_t factor = len / g;
    if (result > kLimit / factor) throw CapExceededError("permutation order", kLimit, kLimit);
    result *= factor;
  }
  return result;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image array.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// --- Action ----------------------------------------------------------------

Action Action::validate(std::size_t carrier_size, std::vector<std::vector<Point>> generators) {
  if (carrier_size == 0) throw Error(ErrorKind::ShapeMismatch, "carrier must be nonempty");
  std::vector<Permutation> perms;
  perms.reserve(generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    auto& images = generators[j];
    if (images.size() != carrier_size)
      throw Error(ErrorKind::ShapeMismatch, "generator " + std::to_string(j + 1) + " has " +
                                                std::to_string(images.size()) +
                                                " images, expected " +
                                                std::to_string(carrier_size));
    std::vector<bool> hit(carrier_size, false);
    for (Point y : images) {
      if (y >= carrier_size || hit[y]) throw NonBijectiveError(j, y);
      hit[y] = true;
    }
    perms.emplace_back(std::move(images));
  }
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = i + 1; j < perms.size(); ++j)
      for (Point x = 0; x < carrier_size; ++x)
        if (perms[i](perms[j](x)) != perms[j](perms[i](x))) throw NonCommutingError(i, j, x);
  return Action(carrier_size, std::move(perms));
}

GroupElement Action::identity() const {
  return {Permutation::identity(carrier_size_), std::vector<std::int64_t>(generators_.size(), 0)};
}

GroupElement Action::generator_element(std::size_t j) const {
  GroupElement g{generators_.at(j), std::vector<std::int64_t>(generators_.size(), 0)};
  g.word[j] = 1;
  return g;
}

GroupElement Action::element(std::span<const std::int64_t> word) const {
  if (word.size() != generators_.size())
    throw Error(ErrorKind::ShapeMismatch, "word length " + std::to_string(word.size()) +
                                              " does not match " +
                                              std::to_string(generators_.size()) + " generators");
  Permutation p = Permutation::identity(carrier_size_);
  for (std::size_t j = 0; j < word.size(); ++j)
    if (word[j] != 0) p = generators_[j].pow(word[j]) * p;
  return {std::move(p), std::vector<std::int64_t>(word.begin(), word.end())};
}

// --- Orbits ----------------------------------------------------------------

namespace {

OrbitPartition orbits_under(std::size_t n, const std::vector<const Permutation*>& gens) {
  OrbitPartition out;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  out.orbit_of.assign(n, kUnset);
  std::vector<Point> stack;
  for (Point start = 0; start < n; ++start) {
    if (out.orbit_of[start] != kUnset) continue;
    const std::size_t id = out.orbits.size();
    std::vector<Point> orbit;
    out.orbit_of[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const Point x = stack.back();
      stack.pop_back();
      orbit.push_back(x);
      // Finite bijections: forward images reach the whole cycle, so
      // inverses are not needed.
      for (const Permutation* g : gens) {
        const Point y = (*g)(x);
        if (out.orbit_of[y] == kUnset) {
          out.orbit_of[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace

OrbitPartition orbit_partition(const Action& action) {
  std::vector<const Permutation*> gens;
  for (const auto& g : action.generators()) gens.push_back(&g);
  return orbits_under(action.carrier_size(), gens);
}

OrbitPartition orbit_partition(const Action& action, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "generator subset is empty");
  std::vector<const Permutation*> gens;
  for (std::size_t j : subset) gens.push_back(&action.generators().at(j));
  return orbits_under(action.carrier_size(), gens);
}

OrbitPartition cycles_of(const Permutation& perm) {
  return orbits_under(perm.size(), {&perm});
}

OrbitView::OrbitView(std::size_t carrier_size, std::span<const Point> orbit)
    : points_(orbit.begin(), orbit.end()), local_of_(carrier_size, -1) {
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] >= carrier_size)
      throw Error(ErrorKind::ShapeMismatch, "orbit point out of range");
    local_of_[points_[i]] = static_cast<std::int64_t>(i);
  }
}

Permutation OrbitView::restrict(const Permutation& perm) const {
  std::vector<Point> local(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const std::int64_t y = local_of_[perm(points_[i])];
    if (y < 0) throw Error(ErrorKind::ShapeMismatch, "point set is not invariant");
    local[i] = static_cast<Point>(y);
  }
  return Permutation(std::move(local));
}

// --- Cyclic subgroups and their intersections ------------------------------

CyclicSubgroup cyclic_subgroup(const Action& action, const GroupElement& element,
                               std::size_t cap) {
  CyclicSubgroup out;
  out.powers.push_back(action.identity());
  GroupElement current = element;
  std::size_t k = 1;
  while (!current.perm.is_identity()) {
    if (k >= cap) throw CapExceededError("cyclic subgroup order", k + 1, cap);
    out.powers.push_back(current);
    ++k;
    current.perm = element.perm * current.perm;
    for (std::size_t j = 0; j < current.word.size(); ++j)
      current.word[j] = element.word[j] * static_cast<std::int64_t>(k);
  }
  out.order = k;
  return out;
}

namespace {

using PermSet = std::unordered_set<Permutation, PermutationHash>;

PermSet enumerate_restricted(const Permutation& local, std::size_t cap) {
  PermSet out;
  Permutation current = Permutation::identity(local.size());
  do {
    if (out.size() >= cap) throw CapExceededError("restricted cyclic group order", cap + 1, cap);
    out.insert(current);
    current = local * current;
  } while (!current.is_identity());
  return out;
}

struct BlockScan {
  std::size_t lead;            // lowest block generator index
  Permutation lead_local;      // its restriction to the orbit
  std::vector<PermSet> others;
};

BlockScan prepare_block(const Action& action, std::span<const Point> orbit,
                        std::span<const std::size_t> block, std::size_t cap) {
  if (block.empty()) throw Error(ErrorKind::EmptyBlock, "block is empty");
  const OrbitView view(action.carrier_size(), orbit);
  std::vector<std::size_t> sorted(block.begin(), block.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  BlockScan scan{sorted.front(), view.restrict(action.generators().at(sorted.front())), {}};
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const Permutation local = view.restrict(action.generators().at(sorted[i]));
    if (local == scan.lead_local) continue;
    scan.others.push_back(enumerate_restricted(local, cap));
  }
  return scan;
}

bool in_all(const BlockScan& scan, const Permutation& p) {
  return std::all_of(scan.others.begin(), scan.others.end(),
                     [&](const PermSet& s) { return s.contains(p); });
}

GroupElement lead_power(const Action& action, std::size_t lead, std::size_t t) {
  GroupElement g{action.generator(lead).pow(static_cast<std::int64_t>(t)),
                 std::vector<std::int64_t>(action.generator_count(), 0)};
  g.word[lead] = static_cast<std::int64_t>(t);
  return g;
}

}  // namespace

std::vector<GroupElement> block_intersection(const Action& action, std::span<const Point> orbit,
                                             std::span<const std::size_t> block,
                                             std::size_t cap) {
  const BlockScan scan = prepare_block(action, orbit, block, cap);
  std::vector<GroupElement> out;
  out.push_back(action.identity());
  Permutation current = scan.lead_local;
  for (std::size_t t = 1; !current.is_identity(); ++t) {
    if (t >= cap) throw CapExceededError("restricted cyclic group order", t + 1, cap);
    if (in_all(scan, current)) out.push_back(lead_power(action, scan.lead, t));
    current = scan.lead_local * current;
  }
  return out;
}

GroupElement block_lcm_generator(const Action& action, std::span<const Point> orbit,
                                 std::span<const std::size_t> block, std::size_t cap) {
  const BlockScan scan = prepare_block(action, orbit, block, cap);
  Permutation current = scan.lead_local;
  for (std::size_t t = 1; !current.is_identity(); ++t) {
    if (t >= cap) throw CapExceededError("restricted cyclic group order", t + 1, cap);
    if (in_all(scan, current)) return lead_power(action, scan.lead, t);
    current = scan.lead_local * current;
  }
  return action.identity();
}

// --- Set partitions --------------------------------------------------------

std::vector<SetPartition> enumerate_set_partitions(std::size_t n, std::size_t cap) {
  if (n > cap) throw CapExceededError("set partition size", n, cap);
  std::vector<SetPartition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  // Restricted growth strings a[0..n) with a[0] = 0, a[i] <= 1 + max(a[<i]),
  // enumerated in lexicographic order.
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  while (true) {
    SetPartition p;
    p.blocks.resize(prefix_max[n - 1] + 1);
    for (std::size_t i = 0; i < n; ++i) p.blocks[a[i]].push_back(i);
    out.push_back(std::move(p));

    std::size_t i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t k = i + 1; k < n; ++k) {
      a[k] = 0;
      prefix_max[k] = prefix_max[i];
    }
  }
  return out;
}

}  // namespace perdecomp
