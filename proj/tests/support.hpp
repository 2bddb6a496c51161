#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "perdecomp/abelian.hpp"
#include "perdecomp/action.hpp"
#include "perdecomp/condition.hpp"
#include "perdecomp/rational.hpp"

namespace testing {

using namespace perdecomp;

inline Rational q(const char* s) { return Rational::parse(s); }

inline FnVec ints(std::initializer_list<long long> values) {
  FnVec out;
  for (long long v : values) out.emplace_back(v);
  return out;
}

inline FnVec rats(std::initializer_list<const char*> values) {
  FnVec out;
  for (const char* v : values) out.push_back(Rational::parse(v));
  return out;
}

/// Translations of Z_m by the given shifts.
inline Action cyclic(std::int64_t m, std::initializer_list<std::int64_t> shifts) {
  std::vector<std::vector<std::int64_t>> periods;
  for (std::int64_t s : shifts) periods.push_back({s});
  const std::vector<std::int64_t> moduli{m};
  return finite_abelian_action(moduli, periods);
}

inline Action z2z2() {
  const std::vector<std::int64_t> moduli{2, 2};
  const std::vector<std::vector<std::int64_t>> periods{{1, 0}, {0, 1}, {1, 1}};
  return finite_abelian_action(moduli, periods);
}

inline std::vector<FnVec> half_valued_triple() {
  return {rats({"0", "1/2", "0", "1/2"}), rats({"0", "0", "1/2", "1/2"}),
          rats({"0", "1/2", "1/2", "0"})};
}

inline bool is_zero(const FnVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline std::string fixture(const std::string& name) {
  return std::string(PERDECOMP_FIXTURE_DIR) + "/" + name;
}

}  // namespace testing
