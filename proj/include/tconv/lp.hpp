#pragma once

#include "tconv/rational.hpp"

namespace tconv {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVec x;        // primal solution when Optimal
  Rational objective;   // c . x when Optimal
};

/**
 * maximize c.x  subject to  A x = b,  x >= 0, over exact rationals.
 *
 * Dense two-phase simplex with Bland's rule (no cycling). `A` is given by
 * rows; rank-deficient systems are fine, redundant rows are dropped after
 * phase one. Sizes here are tiny (a handful of rows, < 100 columns).
 */
LpResult solve_lp(const RationalMatrix& A, const RationalVec& b, const RationalVec& c);

}  // namespace tconv
