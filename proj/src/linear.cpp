#include <utility>

#include "perdecomp/error.hpp"
#include "perdecomp/numeric.hpp"

namespace perdecomp {

RatMatrixSystem::RatMatrixSystem(std::vector<std::vector<Rational>> matrix, std::vector<Rational> rhs)
    : unknowns_(matrix.empty() ? 0 : matrix.front().size()),
      matrix_(std::move(matrix)),
      rhs_(std::move(rhs)) {
  validate();
}

void RatMatrixSystem::add_equation(std::vector<Rational> row, Rational rhs) {
  if (row.size() != unknowns_)
    throw Error(ErrorKind::ShapeMismatch, "equation has " + std::to_string(row.size()) +
                                              " coefficients, expected " +
                                              std::to_string(unknowns_));
  matrix_.push_back(std::move(row));
  rhs_.push_back(std::move(rhs));
}

void RatMatrixSystem::validate() const {
  if (rhs_.size() != matrix_.size())
    throw Error(ErrorKind::ShapeMismatch, "right-hand side length differs from row count");
  for (std::size_t i = 0; i < matrix_.size(); ++i)
    if (matrix_[i].size() != unknowns_)
      throw Error(ErrorKind::ShapeMismatch, "row " + std::to_string(i) + " has wrong length");
}

bool RatMatrixSystem::satisfied_by(std::span<const Rational> x) const {
  if (x.size() != unknowns_) return false;
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    Rational acc;
    for (std::size_t j = 0; j < unknowns_; ++j)
      if (!matrix_[i][j].is_zero()) acc += matrix_[i][j] * x[j];
    if (acc != rhs_[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rational elimination. Rows are folded one at a time into a reduced row
// echelon basis; because the basis is fully reduced, clearing a pivot
// column from an incoming row never disturbs the other pivot columns.

LinearSolution gauss_solve(const RatMatrixSystem& system) {
  system.validate();
  const std::size_t n = system.unknowns();

  struct PivotRow {
    std::size_t column;
    std::vector<Rational> row;
    Rational rhs;
  };
  std::vector<PivotRow> basis;
  std::vector<long> pivot_of(n, -1);

  LinearSolution out;
  for (std::size_t i = 0; i < system.equations(); ++i) {
    std::vector<Rational> row = system.matrix()[i];
    Rational rhs = system.rhs()[i];

    for (std::size_t j = 0; j < n; ++j) {
      if (pivot_of[j] < 0 || row[j].is_zero()) continue;
      const PivotRow& p = basis[static_cast<std::size_t>(pivot_of[j])];
      const Rational coef = row[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!p.row[k].is_zero()) row[k] -= coef * p.row[k];
      rhs -= coef * p.rhs;
    }

    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!row[j].is_zero()) {
        col = j;
        break;
      }
    if (col == n) {
      if (!rhs.is_zero()) return out;
      continue;
    }

    const Rational lead = row[col];
    for (std::size_t k = col; k < n; ++k)
      if (!row[k].is_zero()) row[k] /= lead;
    rhs /= lead;

    for (auto& q : basis) {
      if (q.row[col].is_zero()) continue;
      const Rational coef = q.row[col];
      for (std::size_t k = 0; k < n; ++k)
        if (!row[k].is_zero()) q.row[k] -= coef * row[k];
      q.rhs -= coef * rhs;
    }
    pivot_of[col] = static_cast<long>(basis.size());
    basis.push_back({col, std::move(row), std::move(rhs)});
  }

  out.feasible = true;
  out.values.assign(n, Rational());
  for (const auto& p : basis) out.values[p.column] = p.rhs;
  return out;
}

// ---------------------------------------------------------------------------
// Integer feasibility.
//
// Pass 1 walks the rows and maintains a unimodular U (column-major) such that
// the rows seen so far of H = A U are in lower column echelon form. Row i of
// H is formed lazily as row_i(A) * U; a row with a new nonzero beyond the
// current pivot count becomes a pivot row, everything else is rationally
// dependent on earlier pivot rows.
//
// Pass 2 forward-substitutes H_P y = b_P over the pivot rows with the final
// U. A non-integral y_c, or a dependent row that is not reproduced by
// x = U y, yields a refutation vector.

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

struct Xgcd {
  BigInt g, s, t;
};

Xgcd xgcd(const BigInt& a, const BigInt& b) {
  Xgcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Sparse row of A.
struct IntRow {
  std::vector<std::pair<std::size_t, BigInt>> entries;
};

std::vector<BigInt> times_u(const IntRow& row, const BigMatrix& ucols, std::size_t upto) {
  std::vector<BigInt> h(upto);
  for (std::size_t k = 0; k < upto; ++k) {
    BigInt acc = 0;
    for (const auto& [v, a] : row.entries) acc += a * ucols[k][v];
    h[k] = std::move(acc);
  }
  return h;
}

// Solve z^T P = e^T for a lower-triangular (row j has entries in columns
// 0..j) square matrix P; `target` is the right-hand row vector.
std::vector<Rational> left_solve_lower(const std::vector<std::vector<BigInt>>& lower,
                                       const std::vector<Rational>& target) {
  const std::size_t r = lower.size();
  std::vector<Rational> z(r);
  for (std::size_t kk = r; kk-- > 0;) {
    Rational acc = target[kk];
    for (std::size_t j = kk + 1; j < r; ++j)
      if (lower[j][kk] != 0) acc -= z[j] * Rational(lower[j][kk]);
    z[kk] = acc / Rational(lower[kk][kk]);
  }
  return z;
}

}  // namespace

LinearSolution hnf_solve_integer(const RatMatrixSystem& system) {
  system.validate();
  const std::size_t n = system.unknowns();
  const std::size_t m = system.equations();

  std::vector<IntRow> rows(m);
  std::vector<BigInt> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = system.matrix()[i][j];
      if (!a.is_integer())
        throw Error(ErrorKind::NonIntegerEntry, "coefficient (" + std::to_string(i) + "," +
                                                    std::to_string(j) + ") is not an integer");
      if (!a.is_zero()) rows[i].entries.emplace_back(j, a.numerator());
    }
    if (!system.rhs()[i].is_integer())
      throw Error(ErrorKind::NonIntegerEntry,
                  "right-hand side " + std::to_string(i) + " is not an integer");
    rhs[i] = system.rhs()[i].numerator();
  }

  BigMatrix u(n, std::vector<BigInt>(n, 0));
  for (std::size_t k = 0; k < n; ++k) u[k][k] = 1;

  auto axpy = [&](std::size_t dst, const BigInt& a, std::size_t src) {
    for (std::size_t v = 0; v < n; ++v) u[dst][v] += a * u[src][v];
  };

  std::vector<std::size_t> pivot_rows;
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    if (rows[i].entries.empty()) continue;
    std::vector<BigInt> h = times_u(rows[i], u, n);

    std::size_t first = n;
    for (std::size_t k = c; k < n; ++k)
      if (h[k] != 0) {
        first = k;
        break;
      }
    if (first == n) continue;
    if (first != c) {
      std::swap(u[c], u[first]);
      std::swap(h[c], h[first]);
    }
    for (std::size_t k = c + 1; k < n; ++k) {
      if (h[k] == 0) continue;
      const Xgcd e = xgcd(h[c], h[k]);
      const BigInt a = h[c] / e.g;
      const BigInt b = h[k] / e.g;
      // [col_c col_k] <- [col_c col_k] * [[s, -b], [t, a]], determinant 1.
      for (std::size_t v = 0; v < n; ++v) {
        const BigInt cv = u[c][v];
        const BigInt kv = u[k][v];
        u[c][v] = e.s * cv + e.t * kv;
        u[k][v] = a * kv - b * cv;
      }
      h[c] = e.g;
      h[k] = 0;
    }
    if (h[c] < 0) {
      for (auto& x : u[c]) x = -x;
      h[c] = -h[c];
    }
    for (std::size_t k = 0; k < c; ++k) {
      const BigInt q = floor_div(h[k], h[c]);
      if (q != 0) {
        axpy(k, -q, c);
        h[k] -= q * h[c];
      }
    }
    pivot_rows.push_back(i);
    ++c;
  }

  const std::size_t r = pivot_rows.size();
  std::vector<std::vector<BigInt>> hp(r);
  for (std::size_t j = 0; j < r; ++j) hp[j] = times_u(rows[pivot_rows[j]], u, r);

  LinearSolution out;
  std::vector<BigInt> y(r);
  for (std::size_t j = 0; j < r; ++j) {
    BigInt acc = rhs[pivot_rows[j]];
    for (std::size_t k = 0; k < j; ++k) acc -= hp[j][k] * y[k];
    if (acc % hp[j][j] != 0) {
      std::vector<Rational> target(r);
      target[j] = 1;
      const std::vector<Rational> z = left_solve_lower(hp, target);
      out.refutation.assign(m, Rational());
      for (std::size_t p = 0; p < r; ++p) out.refutation[pivot_rows[p]] = z[p];
      return out;
    }
    y[j] = acc / hp[j][j];
  }

  std::vector<BigInt> x(n, 0);
  for (std::size_t k = 0; k < r; ++k)
    if (y[k] != 0)
      for (std::size_t v = 0; v < n; ++v) x[v] += u[k][v] * y[k];

  for (std::size_t i = 0; i < m; ++i) {
    BigInt acc = 0;
    for (const auto& [v, a] : rows[i].entries) acc += a * x[v];
    const BigInt residual = rhs[i] - acc;
    if (residual == 0) continue;
    // Rationally inconsistent row: combine it against the pivot rows so that
    // the weights annihilate A, then scale the weighted rhs to 1/2.
    const std::vector<BigInt> hi = times_u(rows[i], u, r);
    std::vector<Rational> target(r);
    for (std::size_t k = 0; k < r; ++k) target[k] = Rational(hi[k]);
    const std::vector<Rational> lambda = left_solve_lower(hp, target);
    const Rational scale = Rational(1) / (Rational(2) * Rational(residual));
    out.refutation.assign(m, Rational());
    out.refutation[i] = scale;
    for (std::size_t p = 0; p < r; ++p) out.refutation[pivot_rows[p]] -= lambda[p] * scale;
    return out;
  }

  out.feasible = true;
  out.values.reserve(n);
  for (auto& v : x) out.values.emplace_back(v);
  return out;
}

}  // namespace perdecomp
