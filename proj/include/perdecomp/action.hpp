#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace perdecomp {

using Point = std::uint32_t;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;
inline constexpr std::size_t kDefaultPartitionCap = 8;

/// A bijection of {0..n-1}, stored as its image array. Composition follows
/// function notation: (a * b)(x) == a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  /// No validation; use Action::validate for untrusted input.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}

  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  friend Permutation operator*(const Permutation& outer, const Permutation& inner);
  Permutation inverse() const;
  Permutation pow(std::int64_t exponent) const;
  bool is_identity() const;

  /// lcm of the cycle lengths. Throws CapExceeded past 2^62.
  std::uint64_t order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// An element of the group generated by an action's generators, carrying the
/// exponent vector it was built from.
struct GroupElement {
  Permutation perm;
  std::vector<std::int64_t> word;

  bool is_identity() const { return perm.is_identity(); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// A finite carrier with pairwise-commuting bijections T_1..T_n. Only
/// constructible through validate(), so every instance satisfies the
/// invariants.
class Action {
 public:
  /// Throws NonBijectiveError, NonCommutingError or ShapeMismatch.
  static Action validate(std::size_t carrier_size, std::vector<std::vector<Point>> generators);

  std::size_t carrier_size() const { return carrier_size_; }
  std::size_t generator_count() const { return generators_.size(); }
  const Permutation& generator(std::size_t j) const { return generators_[j]; }
  const std::vector<Permutation>& generators() const { return generators_; }

  GroupElement identity() const;
  GroupElement generator_element(std::size_t j) const;
  /// Product of T_j^word[j]. Throws ShapeMismatch on a wrong-length word.
  GroupElement element(std::span<const std::int64_t> word) const;

  friend bool operator==(const Action&, const Action&) = default;

 private:
  Action(std::size_t carrier_size, std::vector<Permutation> generators)
      : carrier_size_(carrier_size), generators_(std::move(generators)) {}

  std::size_t carrier_size_ = 0;
  std::vector<Permutation> generators_;
};

struct OrbitPartition {
  /// Each orbit sorted ascending; orbits ordered by their minimal point.
  std::vector<std::vector<Point>> orbits;
  std::vector<std::size_t> orbit_of;

  std::size_t count() const { return orbits.size(); }
};

/// Orbits of the full group.
OrbitPartition orbit_partition(const Action& action);
/// Orbits of the subgroup generated by the listed generators. Throws
/// EmptySubset when `subset` is empty.
OrbitPartition orbit_partition(const Action& action, std::span<const std::size_t> subset);
/// Orbits of <perm>, i.e. its cycles.
OrbitPartition cycles_of(const Permutation& perm);

/// Local indexing of an invariant point set (an orbit): local index i names
/// points()[i].
class OrbitView {
 public:
  OrbitView(std::size_t carrier_size, std::span<const Point> orbit);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Restriction of `perm` to the set; throws ShapeMismatch if the set is not
  /// invariant under it.
  Permutation restrict(const Permutation& perm) const;

 private:
  std::vector<Point> points_;
  std::vector<std::int64_t> local_of_;
};

struct CyclicSubgroup {
  std::size_t order = 1;
  std::vector<GroupElement> powers;  ///< element^0 .. element^(order-1)
};

/// Enumerates <element>. Throws CapExceeded when the order exceeds `cap`.
CyclicSubgroup cyclic_subgroup(const Action& action, const GroupElement& element,
                               std::size_t cap = kDefaultEnumerationCap);

/// Every element of [block] = intersection of <T_i|orbit>, i in block,
/// listed as powers b^t (t ascending, starting with the identity) of the
/// lowest-index block generator b. Membership is decided by enumerating each
/// restricted cyclic group. Throws EmptyBlock.
std::vector<GroupElement> block_intersection(const Action& action, std::span<const Point> orbit,
                                             std::span<const std::size_t> block,
                                             std::size_t cap = kDefaultEnumerationCap);

/// A generator of [block] on `orbit`: b^t* for the smallest t* >= 1 with b^t*
/// in every <T_i|orbit>, or the identity when the intersection is trivial.
/// The returned permutation is the global power, which agrees with the
/// restricted one on the orbit. Throws EmptyBlock.
GroupElement block_lcm_generator(const Action& action, std::span<const Point> orbit,
                                 std::span<const std::size_t> block,
                                 std::size_t cap = kDefaultEnumerationCap);

/// A set partition of generator indices {0..n-1}. Blocks are sorted and
/// ordered by their first element.
struct SetPartition {
  std::vector<std::vector<std::size_t>> blocks;
  friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

/// All Bell(n) partitions in restricted-growth-string order (the all-in-one
/// partition first). n == 0 yields the single empty partition. Throws
/// CapExceeded when n > cap.
std::vector<SetPartition> enumerate_set_partitions(std::size_t n,
                                                   std::size_t cap = kDefaultPartitionCap);

}  // namespace perdecomp
