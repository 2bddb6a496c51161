#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "perdecomp/rational.hpp"

namespace perdecomp {

struct BezoutIdentity {
  BigInt gcd;                         ///< positive
  std::vector<BigInt> coefficients;   ///< sum(coefficients[i] * values[i]) == gcd
};

/// Multi-argument extended Euclid. Throws EmptyInput / ZeroElement.
BezoutIdentity ext_gcd(std::span<const BigInt> values);

/// Least positive rational that is an integer multiple of both arguments:
/// lcm(p1/r1, p2/r2) = lcm(p1, p2) / gcd(r1, r2). Throws NonPositive.
Rational rational_lcm(const Rational& a, const Rational& b);

/// A linear system `matrix * x = rhs` over the rationals.
class RatMatrixSystem {
 public:
  explicit RatMatrixSystem(std::size_t unknowns) : unknowns_(unknowns) {}
  RatMatrixSystem(std::vector<std::vector<Rational>> matrix, std::vector<Rational> rhs);

  void add_equation(std::vector<Rational> row, Rational rhs);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return matrix_.size(); }
  const std::vector<std::vector<Rational>>& matrix() const { return matrix_; }
  const std::vector<Rational>& rhs() const { return rhs_; }

  /// Throws ShapeMismatch unless every row has `unknowns()` entries and
  /// the right-hand side has one entry per row.
  void validate() const;

  /// True when `x` satisfies every equation exactly.
  bool satisfied_by(std::span<const Rational> x) const;

 private:
  std::size_t unknowns_;
  std::vector<std::vector<Rational>> matrix_;
  std::vector<Rational> rhs_;
};

struct LinearSolution {
  bool feasible = false;
  /// A solution when feasible (free unknowns set to zero).
  std::vector<Rational> values;
  /// When infeasible over the integers: row weights y with y^T A integral and
  /// y^T b not an integer. Empty for rational infeasibility from gauss_solve.
  std::vector<Rational> refutation;

  explicit operator bool() const { return feasible; }
};

/// Exact Gauss-Jordan elimination; pivot is the first nonzero entry.
LinearSolution gauss_solve(const RatMatrixSystem& system);

/// Integer feasibility via column Hermite normal form (A U = H with U
/// unimodular). Requires integer entries (NonIntegerEntry otherwise).
LinearSolution hnf_solve_integer(const RatMatrixSystem& system);

}  // namespace perdecomp
