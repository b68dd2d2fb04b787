#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tconv/hull.hpp"
#include "tconv/kempfness.hpp"
#include "tconv/legendre.hpp"
#include "tconv/weights.hpp"

namespace tconv {

struct Atom {
  ProjPoint point;
  Rational weight;
};

/// Finite-support probability measure on P^n. Weights are positive and sum to exactly 1.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure dirac(ProjPoint x) { return DiscreteMeasure({Atom{std::move(x), Rational(1)}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

/// g_* nu for g = exp(v): every atom moves, weights stay.
DiscreteMeasure pushforward(const WeightSystem& W, const Eigen::VectorXd& v, const DiscreteMeasure& nu);

/// Psi_M(nu, exp v) = sum_j w_j Psi(x_j, exp v).
double measure_kn(const WeightSystem& W, const DiscreteMeasure& nu, const Eigen::VectorXd& v);

/// Phi(nu) = sum_j w_j mu_a(x_j).
Eigen::VectorXd measure_moment(const WeightSystem& W, const DiscreteMeasure& nu);

/// Phi(exp(v)_* nu) evaluated in log space.
Eigen::VectorXd measure_moment_at(const WeightSystem& W, const DiscreteMeasure& nu, const Eigen::VectorXd& v);

/// Exact Phi after rationalizing each atom's coefficients.
RationalVec measure_rational_moment(const WeightSystem& W, const DiscreteMeasure& nu);

Eigen::MatrixXd measure_hessian(const WeightSystem& W, const DiscreteMeasure& nu, const Eigen::VectorXd& v);

/// Closure of Phi(A . nu) as the weighted Minkowski sum of the atoms' orbit polytopes.
Polytope measure_orbit_polytope(const WeightSystem& W, const DiscreteMeasure& nu);

/// Intersection of the atoms' stabilizers: directions fixing every atom.
Subalgebra measure_stabilizer(const WeightSystem& W, const DiscreteMeasure& nu);

/**
 * Classification of q against the measure orbit polytope without building it:
 * the relative interior of a weighted Minkowski sum is the weighted sum of the
 * relative interiors, so one LP over strictly positive atom-wise combinations
 * of the support weights decides membership.
 */
Membership measure_contains(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& q);

/// Newton solve of Phi(exp(v)_* nu) = target on the complement of the common stabilizer.
InversionResult measure_invert(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& target,
                               const NewtonOptions& opts = {});

/// Atomwise flow limit along beta; A-fixed when beta exposes a vertex of the Minkowski polytope.
DiscreteMeasure measure_flow_limit(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& beta);

bool is_fixed(const WeightSystem& W, const DiscreteMeasure& nu);

/// Factor s >= 1 making every atom's top level gap along s * beta at least 1.
Rational measure_gap_scale(const WeightSystem& W, const DiscreteMeasure& nu, const RationalVec& beta);

struct MeasureVertexWitness {
  RationalVec vertex;
  RationalVec beta;
  bool fixed = false;
  bool matches = false;  // exact Phi of the limit measure equals the vertex
};

/// For each vertex of the Minkowski polytope, the limit measure along an exposing beta.
std::vector<MeasureVertexWitness> measure_vertex_witnesses(const WeightSystem& W, const DiscreteMeasure& nu);

/// (P(M), A) with Psi_M, for check_properties.
class MeasureModel {
 public:
  MeasureModel(const WeightSystem& W, DiscreteMeasure nu)
      : W_(&W), nu_(std::move(nu)), stab_(measure_stabilizer(W, nu_)) {}

  std::size_t dim() const { return W_->dim_a(); }
  double value(const Eigen::VectorXd& v) const { return measure_kn(*W_, nu_, v); }
  Eigen::VectorXd gradient() const { return measure_moment(*W_, nu_); }
  MeasureModel translated(const Eigen::VectorXd& v) const { return MeasureModel(*W_, pushforward(*W_, v, nu_)); }
  bool fixes(const RationalVec& xi) const { return stab_.contains(xi); }
  RationalMatrix stabilizer_basis() const { return stab_.basis(); }
  const DiscreteMeasure& measure() const { return nu_; }

 private:
  const WeightSystem* W_;
  DiscreteMeasure nu_;
  Subalgebra stab_;
};

}  // namespace tconv
