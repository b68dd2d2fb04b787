#include "tconv/kempfness.hpp"

#include <limits>

namespace tconv {
namespace {

void check_v(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v) {
  check_compatible(W, x);
  if (static_cast<std::size_t>(v.size()) != W.dim_a()) throw InputError("group element has the wrong dimension");
  if (!v.allFinite()) throw InputError("group element has non-finite entries");
}

// Exponents a_i = 2 log|z_i| + 2 <alpha_i, v> on the support.
Eigen::VectorXd exponents(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v) {
  const Eigen::VectorXd pair = W.weight_matrix() * v;
  Eigen::VectorXd a = Eigen::VectorXd::Constant(pair.size(), -std::numeric_limits<double>::infinity());
  for (auto i : x.support()) {
    const auto j = static_cast<Eigen::Index>(i);
    a[j] = 2 * x.log_modulus()[i] + 2 * pair[j];
  }
  return a;
}

}  // namespace

double kn_value(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v) {
  check_v(W, x, v);
  const auto& lm = x.log_modulus();
  const Eigen::VectorXd pair = W.weight_matrix() * v;
  // Shift numerator and denominator by their own maxima; at v = 0 both sums
  // are formed identically, so the ratio is exactly 1.
  double lm_max = -std::numeric_limits<double>::infinity();
  for (auto i : x.support()) lm_max = std::max(lm_max, 2 * lm[i]);
  double shift = -std::numeric_limits<double>::infinity();
  for (auto i : x.support()) shift = std::max(shift, 2 * lm[i] - lm_max + 2 * pair[static_cast<Eigen::Index>(i)]);
  double num = 0, den = 0;
  for (auto i : x.support()) {
    const double base = 2 * lm[i] - lm_max;
    num += std::exp(base + 2 * pair[static_cast<Eigen::Index>(i)] - shift);
    den += std::exp(base);
  }
  return 0.5 * (shift + std::log(num / den));
}

Eigen::VectorXd softmax_coefficients(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v) {
  check_v(W, x, v);
  Eigen::VectorXd a = exponents(W, x, v);
  const double m = a.maxCoeff();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.size());
  double s = 0;
  for (auto i : x.support()) {
    const auto j = static_cast<Eigen::Index>(i);
    c[j] = std::exp(a[j] - m);
    s += c[j];
  }
  return c / s;
}

Eigen::VectorXd moment_map_at(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v) {
  return W.weight_matrix().transpose() * softmax_coefficients(W, x, v);
}

Eigen::VectorXd moment_map(const WeightSystem& W, const ProjPoint& x) {
  return moment_map_at(W, x, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.dim_a())));
}

RationalVec rational_moment(const WeightSystem& W, const ProjPoint& x) {
  const Eigen::VectorXd c = softmax_coefficients(W, x, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.dim_a())));
  std::vector<Rational> q;
  Rational total(0);
  for (auto i : x.support()) {
    q.push_back(exact_rational(c[static_cast<Eigen::Index>(i)]));
    total += q.back();
  }
  RationalVec mu = zeros(W.dim_a());
  for (std::size_t s = 0; s < q.size(); ++s) mu = mu + (q[s] / total) * W.weight(x.support()[s]);
  return mu;
}

KNEvaluation kn_derivatives(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& v) {
  KNEvaluation out;
  out.value = kn_value(W, x, v);
  const Eigen::VectorXd c = softmax_coefficients(W, x, v);
  const Eigen::MatrixXd& A = W.weight_matrix();
  out.gradient = A.transpose() * c;
  const auto k = static_cast<Eigen::Index>(W.dim_a());
  out.hessian = Eigen::MatrixXd::Zero(k, k);
  for (auto i : x.support()) {
    const auto j = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd d = A.row(j).transpose() - out.gradient;
    out.hessian.noalias() += 2 * c[j] * d * d.transpose();
  }
  out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  return out;
}

}  // namespace tconv
