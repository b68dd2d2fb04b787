#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace tconv {

using Rational = mpq_class;

/// Exact vector in the abelian algebra, in weight coordinates.
using RationalVec = std::vector<Rational>;

/// Row-major list of exact vectors; every row has the same length.
using RationalMatrix = std::vector<RationalVec>;

// Text form is always "p/q" in lowest terms with q > 0 ("0/1", "3/1", "-1/2").
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

RationalVec parse_rational_vec(std::string_view comma_separated);
std::string format_rational_vec(const RationalVec& v);

/// Exact conversion: every finite double is a dyadic rational.
Rational exact_rational(double x);

RationalVec zeros(std::size_t dim);
RationalVec operator+(const RationalVec& a, const RationalVec& b);
RationalVec operator-(const RationalVec& a, const RationalVec& b);
RationalVec operator*(const Rational& s, const RationalVec& a);
/// num/den in lowest terms. Prefer this to the two-argument mpq_class constructor, which does not canonicalize.
Rational ratio(long num, long den);

Rational dot(const RationalVec& a, const RationalVec& b);
bool is_zero(const RationalVec& v);

Eigen::VectorXd to_double(const RationalVec& v);

/// Exact rationalization of a double vector.
RationalVec to_rational(const Eigen::VectorXd& v);

/**
 * Reduced row echelon form of an exact matrix.
 *
 * Zero rows are dropped, so `rows` is a canonical basis of the row space:
 * two matrices span the same row space iff their reduced forms are equal.
 * `pivots[r]` is the pivot column of `rows[r]`.
 */
struct RowEchelon {
  std::size_t cols = 0;
  RationalMatrix rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return rows.size(); }

  /// Residual of `v` after elimination against the rows; zero iff v is in the span.
  RationalVec reduce(RationalVec v) const;
  bool spans(const RationalVec& v) const { return is_zero(reduce(v)); }

  /// Canonical basis of the null space {x : rows * x = 0}.
  RationalMatrix kernel() const;
};

RowEchelon row_echelon(const RationalMatrix& rows, std::size_t cols);

}  // namespace tconv
