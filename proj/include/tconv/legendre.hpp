#pragma once

#include <functional>

#include <Eigen/Dense>

#include "tconv/rational.hpp"

namespace tconv {

struct NewtonOptions {
  double tol = 1e-9;
  int max_iter = 100;
};

struct InversionResult {
  Eigen::VectorXd v;   // in a, restricted to the complement of the stabilizer
  int iterations = 0;
  double residual = 0; // |Phi(exp(v) p) - target|
};

/// A strictly convex potential on R^k: value, gradient and Hessian at v.
struct ConvexPotential {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
};

/// Orthonormal basis (as columns) of the span of exact rational vectors.
Eigen::MatrixXd orthonormal_basis(std::size_t ambient_dim, const RationalMatrix& spanning);

/**
 * Damped Newton for grad(potential)(v) = target with v restricted to
 * span(basis columns), on F(v) = potential(v) - <target, v>.
 *
 * Starts at v = 0, halves the step until the Armijo decrease holds, and
 * stops once the gradient residual |B^T (grad - target)| <= tol. Throws
 * ConvergenceError after max_iter iterations.
 */
InversionResult newton_legendre(const ConvexPotential& potential, const Eigen::VectorXd& target,
                                const Eigen::MatrixXd& basis, const NewtonOptions& opts);

}  // namespace tconv
