#include "tconv/lp.hpp"

#include <optional>

#include "tconv/errors.hpp"

namespace tconv {
namespace {

struct Tableau {
  std::size_t cols = 0;  // structural + artificial columns; rhs lives at index `cols`
  RationalMatrix rows;
  std::vector<std::size_t> basis;
  RationalVec reduced;  // reduced[j] = c_B B^-1 A_j - c_j, reduced[cols] = objective

  void pivot(std::size_t r, std::size_t col) {
    Rational inv = 1 / rows[r][col];
    for (auto& e : rows[r]) e *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (reduced[col] != 0) {
      Rational f = reduced[col];
      for (std::size_t j = 0; j <= cols; ++j) reduced[j] -= f * rows[r][j];
    }
    basis[r] = col;
  }

  void price(const RationalVec& cost) {
    reduced.assign(cols + 1, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) reduced[j] = -cost[j];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational& cb = cost[basis[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) reduced[j] += cb * rows[r][j];
    }
  }

  // Returns false if unbounded.
  bool optimize(std::size_t usable_cols) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < usable_cols; ++j) {
        if (reduced[j] < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][*enter] <= 0) continue;
        Rational ratio = rows[r][cols] / rows[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis[r] < basis[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const RationalMatrix& A, const RationalVec& b, const RationalVec& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw InputError("solve_lp: rhs length does not match row count");
  for (const auto& row : A)
    if (row.size() != n) throw InputError("solve_lp: ragged constraint matrix");

  Tableau t;
  t.cols = n + m;
  t.rows.assign(m, RationalVec(t.cols + 1, Rational(0)));
  t.basis.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r] < 0;
    for (std::size_t j = 0; j < n; ++j) t.rows[r][j] = flip ? -A[r][j] : A[r][j];
    t.rows[r][n + r] = 1;
    t.rows[r][t.cols] = flip ? -b[r] : b[r];
    t.basis[r] = n + r;
  }

  // Phase one: maximize -sum(artificials).
  RationalVec phase1(t.cols, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = -1;
  t.price(phase1);
  t.optimize(t.cols);
  if (t.reduced[t.cols] != 0) return {LpStatus::Infeasible, {}, {}};

  // Drive remaining artificials out of the basis, or drop their (redundant) rows.
  for (std::size_t r = 0; r < t.rows.size();) {
    if (t.basis[r] < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.rows[r][j] != 0) {
        col = j;
        break;
      }
    }
    if (col) {
      t.pivot(r, *col);
      ++r;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  RationalVec phase2(t.cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  t.price(phase2);
  if (!t.optimize(n)) return {LpStatus::Unbounded, {}, {}};

  LpResult out;
  out.status = LpStatus::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) out.x[t.basis[r]] = t.rows[r][t.cols];
  out.objective = t.reduced[t.cols];
  return out;
}

}  // namespace tconv
