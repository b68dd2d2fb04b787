#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tconv/rational.hpp"

namespace tconv {

/**
 * Diagonal action of A = exp(a), a = R^k, on P^n.
 *
 * exp(v) scales homogeneous coordinate i by e^{<alpha_i, v>}. The pairing
 * on a is the standard inner product in weight coordinates.
 */
class WeightSystem {
 public:
  WeightSystem(std::size_t dim_a, std::vector<RationalVec> weights);

  std::size_t dim_a() const { return dim_a_; }
  /// Number of homogeneous coordinates, n + 1.
  std::size_t size() const { return weights_.size(); }
  const RationalVec& weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<RationalVec>& weights() const { return weights_; }

  /// Weights as a (n+1) x k double matrix.
  const Eigen::MatrixXd& weight_matrix() const { return as_double_; }

  Rational pairing(std::size_t i, const RationalVec& beta) const { return dot(weights_.at(i), beta); }

 private:
  std::size_t dim_a_;
  std::vector<RationalVec> weights_;
  Eigen::MatrixXd as_double_;
};

/**
 * Point of P^n with an exact support set.
 *
 * Stored in polar form: per supported coordinate a log-modulus and a phase,
 * normalized so that sum_i |z_i|^2 = 1. The log form keeps every supported
 * coordinate nonzero under arbitrarily long flows; `coords()` materializes
 * the complex vector (entries far below the largest may underflow there,
 * but `support()` stays authoritative).
 */
class ProjPoint {
 public:
  /// Throws InputError unless coords vanish exactly off `support` and are nonzero on it.
  ProjPoint(const std::vector<std::complex<double>>& coords, std::vector<std::size_t> support);

  /// Support inferred from exact zeros.
  static ProjPoint from_coords(const std::vector<std::complex<double>>& coords);

  /// Standard basis point e_i of P^{n}, n + 1 = size.
  static ProjPoint basis(std::size_t size, std::size_t i);

  std::size_t size() const { return log_modulus_.size(); }
  const std::vector<std::size_t>& support() const { return support_; }
  bool in_support(std::size_t i) const;

  std::vector<std::complex<double>> coords() const;
  /// log|z_i| (normalized); -inf off the support.
  const std::vector<double>& log_modulus() const { return log_modulus_; }
  const std::vector<double>& phase() const { return phase_; }

  /// Same point with log-moduli shifted by `shift` and renormalized.
  ProjPoint rescaled(const std::vector<double>& shift) const;

  /// Restriction to a subset of the support, renormalized.
  ProjPoint restricted(const std::vector<std::size_t>& subset) const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  ProjPoint() = default;
  void normalize();

  std::vector<std::size_t> support_;
  std::vector<double> log_modulus_;
  std::vector<double> phase_;
};

/// Subspace of a = R^k with an exact basis in reduced row echelon form.
class Subalgebra {
 public:
  Subalgebra(std::size_t ambient_dim, const RationalMatrix& spanning);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return echelon_.rank(); }
  const RationalMatrix& basis() const { return echelon_.rows; }
  bool contains(const RationalVec& xi) const;

  Subalgebra orthogonal_complement() const;

  friend bool operator==(const Subalgebra& a, const Subalgebra& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.echelon_.rows == b.echelon_.rows;
  }

 private:
  std::size_t ambient_dim_;
  RowEchelon echelon_;
};

/// exp(v) . x with (exp(v) z)_i = e^{<alpha_i, v>} z_i, renormalized. Support is unchanged.
ProjPoint act(const WeightSystem& W, const Eigen::VectorXd& v, const ProjPoint& x);

/// span{alpha_i - alpha_j : i, j in supp(x)}, the orthogonal complement of the stabilizer.
Subalgebra weight_differences(const WeightSystem& W, const std::vector<std::size_t>& support);

/// Projective stabilizer a_x = {xi : <alpha_i - alpha_j, xi> = 0 on supp(x)}.
Subalgebra stabilizer_algebra(const WeightSystem& W, const ProjPoint& x);

bool is_fixed(const WeightSystem& W, const ProjPoint& x);

/// Reproducible point with exactly the requested support; moduli in [1/4, 1], uniform phases.
ProjPoint random_point(const WeightSystem& W, std::vector<std::size_t> support_pattern, std::uint64_t seed);

/// Point with real Gaussian coordinates; support is read off the exact nonzeros.
ProjPoint random_real_point(const WeightSystem& W, std::uint64_t seed);

/// Fubini-Study chordal distance sqrt(1 - |<x, y>|^2).
double projective_distance(const ProjPoint& x, const ProjPoint& y);

void check_compatible(const WeightSystem& W, const ProjPoint& x);

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tconv
