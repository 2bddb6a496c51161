#include "perdecomp/condition.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

#include "perdecomp/error.hpp"
#include "perdecomp/kernels.hpp"

namespace perdecomp {

FnVec difference(const Permutation& s, const FnVec& f) {
  if (s.size() != f.size())
    throw Error(ErrorKind::ShapeMismatch, "function has " + std::to_string(f.size()) +
                                              " values, transformation acts on " +
                                              std::to_string(s.size()) + " points");
  FnVec out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[s(static_cast<Point>(x))] - f[x];
  return out;
}

FnVec difference(const Action& action, const GroupElement& s, const FnVec& f) {
  if (f.size() != action.carrier_size() || s.perm.size() != action.carrier_size())
    throw Error(ErrorKind::ShapeMismatch, "shape does not match the action's carrier");
  return difference(s.perm, f);
}

FnVec iterated_difference(const Action& action, std::span<const GroupElement> elements,
                          const FnVec& f) {
  FnVec acc = f;
  for (const auto& s : elements) acc = difference(action, s, acc);
  if (elements.empty() && f.size() != action.carrier_size())
    throw Error(ErrorKind::ShapeMismatch, "shape does not match the action's carrier");
  return acc;
}

namespace {

// Evaluation backends for operator chains on one orbit. The integer backend
// works on D*f for the orbit's common denominator D and runs on the SIMD
// kernels; the rational backend is the fallback when D*f times 2^chain
// length could overflow.

struct IntBackend {
  using Vec = std::vector<std::int64_t>;
  BigInt scale;

  void apply(const Permutation& local, const Vec& in, Vec& out) const {
    out.resize(in.size());
    kernels::gather_sub(in, local.images(), out);
  }
  static std::size_t first_nonzero(const Vec& v) { return kernels::first_nonzero(v); }
  Rational value(const Vec& v, std::size_t i) const {
    return Rational(BigInt(std::to_string(v[i])), scale);
  }
};

struct RatBackend {
  using Vec = FnVec;

  static void apply(const Permutation& local, const Vec& in, Vec& out) {
    out = difference(local, in);
  }
  static std::size_t first_nonzero(const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) return i;
    return v.size();
  }
  static Rational value(const Vec& v, std::size_t i) { return v[i]; }
};

std::optional<std::vector<std::int64_t>> scale_to_int64(const FnVec& values, const BigInt& scale,
                                                        std::size_t chain_length) {
  const unsigned headroom = 62U - static_cast<unsigned>(std::min<std::size_t>(chain_length, 62));
  const BigInt limit = BigInt(1) << headroom;
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    const BigInt scaled = v.numerator() * (scale / v.denominator());
    if (abs(scaled) >= limit) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(scaled.get_si()));
  }
  return out;
}

struct BlockInfo {
  std::vector<GroupElement> elements;  // generator mode: the single generator
  std::vector<Permutation> local;
  bool trivial = false;
};

class OrbitChecker {
 public:
  OrbitChecker(const Action& action, std::size_t orbit_id, const std::vector<Point>& orbit,
               const CheckOptions& options, CheckResult& result)
      : action_(action), orbit_id_(orbit_id), view_(action.carrier_size(), orbit),
        options_(options), result_(result) {}

  template <class Backend>
  bool run(const Backend& backend, const typename Backend::Vec& values,
           const std::vector<SetPartition>& partitions) {
    for (const auto& partition : partitions) {
      std::vector<const BlockInfo*> blocks;
      bool trivial = false;
      for (const auto& block : partition.blocks) {
        blocks.push_back(&block_info(block));
        trivial = trivial || blocks.back()->trivial;
      }
      if (trivial && options_.skip_trivial) {
        ++result_.trivial_skipped;
        continue;
      }
      if (options_.mode == CheckMode::Exhaustive) {
        std::size_t chains = 1;
        for (const BlockInfo* b : blocks) {
          const std::size_t choices = b->elements.size() - (options_.skip_trivial ? 1 : 0);
          if (choices != 0 && chains > options_.exhaustive_budget / choices)
            throw CapExceededError("exhaustive operator chains", chains * choices,
                                   options_.exhaustive_budget);
          chains *= choices;
        }
      }
      std::vector<std::size_t> choice(blocks.size(), 0);
      std::vector<typename Backend::Vec> levels(blocks.size() + 1);
      levels[0] = values;
      if (descend(backend, partition, blocks, choice, levels, 0)) return true;
    }
    return false;
  }

 private:
  const BlockInfo& block_info(const std::vector<std::size_t>& block) {
    std::uint64_t mask = 0;
    for (std::size_t j : block) mask |= std::uint64_t{1} << j;
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;

    BlockInfo info;
    if (options_.mode == CheckMode::Generator) {
      GroupElement g =
          block_lcm_generator(action_, view_.points(), block, options_.enumeration_cap);
      info.trivial = view_.restrict(g.perm).is_identity();
      info.elements.push_back(std::move(g));
    } else {
      info.elements =
          block_intersection(action_, view_.points(), block, options_.enumeration_cap);
      info.trivial = info.elements.size() == 1;
      if (options_.skip_trivial) info.elements.erase(info.elements.begin());
    }
    for (const auto& e : info.elements) info.local.push_back(view_.restrict(e.perm));
    return cache_.emplace(mask, std::move(info)).first->second;
  }

  template <class Backend>
  bool descend(const Backend& backend, const SetPartition& partition,
               const std::vector<const BlockInfo*>& blocks, std::vector<std::size_t>& choice,
               std::vector<typename Backend::Vec>& levels, std::size_t depth) {
    if (depth == blocks.size()) {
      ++result_.chains_evaluated;
      const auto& v = levels[depth];
      const std::size_t i = Backend::first_nonzero(v);
      if (i == v.size()) return false;
      ViolationCertificate cert;
      cert.orbit = orbit_id_;
      cert.partition = partition;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        cert.chosen.push_back(blocks[b]->elements[choice[b]]);
      cert.witness = view_.points()[i];
      cert.value = backend.value(v, i);
      result_.violation = std::move(cert);
      return true;
    }
    const BlockInfo& info = *blocks[depth];
    for (std::size_t c = 0; c < info.elements.size(); ++c) {
      choice[depth] = c;
      backend.apply(info.local[c], levels[depth], levels[depth + 1]);
      if (descend(backend, partition, blocks, choice, levels, depth + 1)) return true;
    }
    return false;
  }

  const Action& action_;
  std::size_t orbit_id_;
  OrbitView view_;
  const CheckOptions& options_;
  CheckResult& result_;
  std::map<std::uint64_t, BlockInfo> cache_;
};

}  // namespace

CheckResult check_condition(const Action& action, const FnVec& f, const CheckOptions& options) {
  if (f.size() != action.carrier_size())
    throw Error(ErrorKind::ShapeMismatch, "function has " + std::to_string(f.size()) +
                                              " values, carrier has " +
                                              std::to_string(action.carrier_size()));
  const std::size_t n = action.generator_count();
  const auto partitions = enumerate_set_partitions(n, options.partition_cap);
  const OrbitPartition orbits = orbit_partition(action);

  CheckResult result;
  for (std::size_t o = 0; o < orbits.count(); ++o) {
    const auto& orbit = orbits.orbits[o];
    FnVec local(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) local[i] = f[orbit[i]];

    OrbitChecker checker(action, o, orbit, options, result);
    const BigInt scale = common_denominator(local);
    bool found = false;
    if (auto scaled = scale_to_int64(local, scale, n)) {
      found = checker.run(IntBackend{scale}, *scaled, partitions);
    } else {
      found = checker.run(RatBackend{}, local, partitions);
    }
    if (found) break;
  }
  return result;
}

bool verify_certificate(const Action& action, const FnVec& f, const ViolationCertificate& cert,
                        std::size_t enumeration_cap) {
  if (f.size() != action.carrier_size()) return false;
  const std::size_t n = action.generator_count();
  const OrbitPartition orbits = orbit_partition(action);
  if (cert.orbit >= orbits.count()) return false;
  const auto& orbit = orbits.orbits[cert.orbit];
  if (!std::binary_search(orbit.begin(), orbit.end(), cert.witness)) return false;

  std::vector<int> seen(n, 0);
  for (const auto& block : cert.partition.blocks) {
    if (block.empty()) return false;
    for (std::size_t j : block) {
      if (j >= n || seen[j]++ != 0) return false;
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(n)) return false;
  if (cert.chosen.size() != cert.partition.blocks.size()) return false;

  const OrbitView view(action.carrier_size(), orbit);
  for (std::size_t b = 0; b < cert.chosen.size(); ++b) {
    const GroupElement& s = cert.chosen[b];
    if (s.word.size() != n || action.element(s.word).perm != s.perm) return false;
    const Permutation local = view.restrict(s.perm);
    bool member = false;
    for (const auto& e :
         block_intersection(action, orbit, cert.partition.blocks[b], enumeration_cap)) {
      if (view.restrict(e.perm) == local) {
        member = true;
        break;
      }
    }
    if (!member) return false;
  }

  const FnVec chain = iterated_difference(action, cert.chosen, f);
  return !cert.value.is_zero() && chain[cert.witness] == cert.value;
}

}  // namespace perdecomp
