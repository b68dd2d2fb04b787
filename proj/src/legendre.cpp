#include "tconv/legendre.hpp"

#include <cmath>
#include <sstream>

#include "tconv/errors.hpp"

namespace tconv {

Eigen::MatrixXd orthonormal_basis(std::size_t ambient_dim, const RationalMatrix& spanning) {
  const auto k = static_cast<Eigen::Index>(ambient_dim);
  if (spanning.empty()) return Eigen::MatrixXd(k, 0);
  const RowEchelon ech = row_echelon(spanning, ambient_dim);
  const auto d = static_cast<Eigen::Index>(ech.rank());
  if (d == 0) return Eigen::MatrixXd(k, 0);
  Eigen::MatrixXd cols(k, d);
  for (Eigen::Index j = 0; j < d; ++j) cols.col(j) = to_double(ech.rows[static_cast<std::size_t>(j)]);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  return qr.householderQ() * Eigen::MatrixXd::Identity(k, d);
}

InversionResult newton_legendre(const ConvexPotential& potential, const Eigen::VectorXd& target,
                                const Eigen::MatrixXd& basis, const NewtonOptions& opts) {
  const Eigen::Index k = target.size();
  InversionResult out;
  out.v = Eigen::VectorXd::Zero(k);

  auto objective = [&](const Eigen::VectorXd& v) { return potential.value(v) - target.dot(v); };
  auto reduced_grad = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return basis.transpose() * (potential.gradient(v) - target);
  };

  Eigen::VectorXd g = reduced_grad(out.v);
  double F = objective(out.v);
  for (int it = 0;; ++it) {
    out.iterations = it;
    if (g.norm() <= opts.tol) break;
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "Newton did not converge in " << opts.max_iter << " iterations (gradient residual " << g.norm() << ")";
      throw ConvergenceError(os.str(), g.norm(), it);
    }
    const Eigen::MatrixXd H = basis.transpose() * potential.hessian(out.v) * basis;
    Eigen::VectorXd step_u = H.ldlt().solve(-g);
    // A saturated softmax makes H numerically singular; shift it until the step descends.
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(H.rows(), H.cols());
    for (double lam = 1e-12 * (1.0 + H.norm()); !(step_u.allFinite() && g.dot(step_u) < 0); lam *= 10) {
      if (lam > 1e12) {
        step_u = -g;
        break;
      }
      step_u = (H + lam * I).ldlt().solve(-g);
    }
    const Eigen::VectorXd step = basis * step_u;
    const double slope = g.dot(step_u);

    // Once the predicted decrease is below the rounding level of F, the
    // objective cannot rank trial points; use the gradient norm instead.
    const bool flat = -slope <= 1e-11 * (1.0 + std::abs(F));
    // damped start 1 / (1 + Newton decrement) keeps early steps out of saturation
    double t = 1.0 / (1.0 + std::sqrt(-slope));
    bool accepted = false;
    Eigen::VectorXd trial;
    double F_trial = 0;
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      trial = out.v + t * step;
      F_trial = objective(trial);
      if (!std::isfinite(F_trial)) continue;
      if (flat ? reduced_grad(trial).norm() < g.norm() : F_trial <= F + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw ConvergenceError("line search stalled (gradient residual " + std::to_string(g.norm()) + ")", g.norm(), it);
    out.v = trial;
    F = F_trial;
    g = reduced_grad(out.v);
  }
  out.residual = (potential.gradient(out.v) - target).norm();
  return out;
}

}  // namespace tconv
