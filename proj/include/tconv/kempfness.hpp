#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "tconv/errors.hpp"
#include "tconv/weights.hpp"

namespace tconv {

/// Psi(x, exp v) with its gradient and Hessian in v.
struct KNEvaluation {
  double value = 0;
  Eigen::VectorXd gradient;  // mu_a(exp(v) x)
  Eigen::MatrixXd hessian;   // 2 * covariance of the weights under the softmax coefficients
};

/**
 * Kempf-Ness function of the linear action,
 *   Psi(x, exp v) = 1/2 log( sum_{i in supp} |z_i|^2 e^{2 <alpha_i, v>} )
 * for normalized x. Evaluated with the max-exponent shift; exactly 0 at v = 0.
 */
double kn_value(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v);

/// Coefficients |z_i|^2 of exp(v) x (normalized), indexed like the homogeneous coordinates.
Eigen::VectorXd softmax_coefficients(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v);

/// mu_a(x) = sum_i |z_i|^2 alpha_i / sum_i |z_i|^2.
Eigen::VectorXd moment_map(const WeightSystem& W, const ProjPoint& x);

/// mu_a(exp(v) x) evaluated in log space, without materializing the translated point.
Eigen::VectorXd moment_map_at(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v);

/**
 * Exact moment of x after rationalizing its coefficients |z_i|^2.
 *
 * Each coefficient is converted exactly and the vector renormalized over
 * the rationals, so the result is a strictly positive convex combination of
 * the active weights.
 */
RationalVec rational_moment(const WeightSystem& W, const ProjPoint& x);

KNEvaluation kn_derivatives(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v);

/**
 * What check_properties needs from a Kempf-Ness pair (space point, abelian group):
 * the function v -> Psi(p, exp v), the gradient map at p, the translated
 * point exp(v) p, and the exact stabilizer test for a rational direction.
 */
template <class M>
concept KempfNessModel = requires(const M& m, const Eigen::VectorXd& v, const RationalVec& xi) {
  { m.dim() } -> std::convertible_to<std::size_t>;
  { m.value(v) } -> std::convertible_to<double>;
  { m.gradient() } -> std::convertible_to<Eigen::VectorXd>;
  { m.translated(v) } -> std::same_as<M>;
  { m.fixes(xi) } -> std::convertible_to<bool>;
  { m.stabilizer_basis() } -> std::convertible_to<RationalMatrix>;
};

/// (P^n, A) with the linear Kempf-Ness function.
class PointModel {
 public:
  PointModel(const WeightSystem& W, ProjPoint x) : W_(&W), x_(std::move(x)), stab_(stabilizer_algebra(W, x_)) {}

  std::size_t dim() const { return W_->dim_a(); }
  double value(const Eigen::VectorXd& v) const { return kn_value(*W_, x_, v); }
  Eigen::VectorXd gradient() const { return moment_map(*W_, x_); }
  PointModel translated(const Eigen::VectorXd& v) const { return PointModel(*W_, act(*W_, v, x_)); }
  bool fixes(const RationalVec& xi) const { return stab_.contains(xi); }
  RationalMatrix stabilizer_basis() const { return stab_.basis(); }
  const ProjPoint& point() const { return x_; }

 private:
  const WeightSystem* W_;
  ProjPoint x_;
  Subalgebra stab_;
};

struct KNTolerances {
  double cocycle = 1e-9;
  double gradient_rel = 1e-6;   // relative to max(1, |<Phi, xi>|)
  double second_difference = 1e-10;
  double fd_step = 1e-5;
  double convexity_step = 1.0;  // step h of Psi(hxi) + Psi(-hxi) - 2 Psi(0)
  double probe_radius = 1.0;    // v, w sampled uniformly from [-r, r]^k
  int xi_range = 3;             // generic xi has integer entries in [-range, range]
};

struct PropertyResult {
  bool pass = true;
  double worst = 0;  // largest violation measure observed
  int checked = 0;
};

/**
 * Outcome of the Kempf-Ness axiom suite.
 *
 * cocycle:   |Psi(v + w) - Psi(v) - Psi_{exp(v)x}(w)|
 * gradient:  central difference of Psi along xi vs <Phi, xi>, relative
 * convexity: most negative second difference
 * stabilizer: second difference vanishes iff xi is in the exact stabilizer;
 *   worst_in = largest |second difference| over stabilizer directions,
 *   min_out  = smallest second difference over the remaining directions.
 */
struct PropertyReport {
  std::uint64_t seed = 0;
  int trials = 0;
  PropertyResult cocycle, gradient, convexity, stabilizer;
  double stabilizer_worst_in = 0;
  double stabilizer_min_out = std::numeric_limits<double>::infinity();
  int stabilizer_in_count = 0;
  int stabilizer_out_count = 0;

  bool pass() const { return cocycle.pass && gradient.pass && convexity.pass && stabilizer.pass; }
};

namespace detail {

inline Eigen::VectorXd uniform_vec(std::mt19937_64& rng, std::size_t k, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Eigen::VectorXd v(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(rng);
  return v;
}

// Odd trials draw xi from the stabilizer lattice when it is nontrivial, even
// trials draw a generic integer vector.
inline RationalVec sample_direction(std::mt19937_64& rng, std::size_t k, const RationalMatrix& stab, int trial,
                                    int range) {
  std::uniform_int_distribution<int> coef(-range, range);
  RationalVec xi = zeros(k);
  if (trial % 2 == 1 && !stab.empty()) {
    for (const auto& b : stab) xi = xi + Rational(coef(rng)) * b;
    if (is_zero(xi)) xi = stab.front();
    return xi;
  }
  do {
    for (auto& e : xi) e = coef(rng);
  } while (is_zero(xi));
  return xi;
}

}  // namespace detail

/**
 * Randomized check of the Kempf-Ness axioms for an abelian action.
 *
 * Per trial the generator is reseeded from (seed, trial), so the report does
 * not depend on evaluation order.
 */
template <KempfNessModel M>
PropertyReport check_properties(const M& model, int trials, std::uint64_t seed, const KNTolerances& tol = {}) {
  if (trials < 1) throw InputError("check_properties: trials must be at least 1");
  PropertyReport rep;
  rep.seed = seed;
  rep.trials = trials;
  const std::size_t k = model.dim();
  const RationalMatrix stab = model.stabilizer_basis();

  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    const Eigen::VectorXd v = detail::uniform_vec(rng, k, tol.probe_radius);
    const Eigen::VectorXd w = detail::uniform_vec(rng, k, tol.probe_radius);
    const RationalVec xi_q = detail::sample_direction(rng, k, stab, t, tol.xi_range);
    const Eigen::VectorXd xi = to_double(xi_q);
    const M moved = model.translated(v);

    // cocycle
    const double cocycle = std::abs(model.value(v + w) - model.value(v) - moved.value(w));
    rep.cocycle.worst = std::max(rep.cocycle.worst, cocycle);
    rep.cocycle.pass = rep.cocycle.pass && cocycle <= tol.cocycle;
    ++rep.cocycle.checked;

    // gradient map as derivative, at x and at exp(v) x
    for (const M* at : {&model, &moved}) {
      const double h = tol.fd_step;
      const double fd = (at->value(h * xi) - at->value(-h * xi)) / (2 * h);
      const double exact = at->gradient().dot(xi);
      const double rel = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
      rep.gradient.worst = std::max(rep.gradient.worst, rel);
      rep.gradient.pass = rep.gradient.pass && rel <= tol.gradient_rel;
      ++rep.gradient.checked;
    }

    // convexity and the stabilizer characterization, at exp(v) x
    const double h = tol.convexity_step;
    const double d2 = moved.value(h * xi) + moved.value(-h * xi) - 2 * moved.value(Eigen::VectorXd::Zero(k));
    rep.convexity.worst = std::max(rep.convexity.worst, -d2);
    rep.convexity.pass = rep.convexity.pass && d2 >= -tol.second_difference;
    ++rep.convexity.checked;

    if (model.fixes(xi_q)) {
      ++rep.stabilizer_in_count;
      rep.stabilizer_worst_in = std::max(rep.stabilizer_worst_in, std::abs(d2));
      rep.stabilizer.pass = rep.stabilizer.pass && std::abs(d2) <= tol.second_difference;
    } else {
      ++rep.stabilizer_out_count;
      rep.stabilizer_min_out = std::min(rep.stabilizer_min_out, d2);
      rep.stabilizer.pass = rep.stabilizer.pass && d2 > tol.second_difference;
    }
    ++rep.stabilizer.checked;
  }
  rep.stabilizer.worst = rep.stabilizer_worst_in;
  return rep;
}

}  // namespace tconv
