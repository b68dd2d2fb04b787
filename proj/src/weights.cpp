#include "tconv/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tconv/errors.hpp"

namespace tconv {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp2(const std::vector<double>& log_mod, const std::vector<std::size_t>& support) {
  double m = kNegInf;
  for (auto i : support) m = std::max(m, 2 * log_mod[i]);
  double s = 0;
  for (auto i : support) s += std::exp(2 * log_mod[i] - m);
  return m + std::log(s);
}

}  // namespace

WeightSystem::WeightSystem(std::size_t dim_a, std::vector<RationalVec> weights)
    : dim_a_(dim_a), weights_(std::move(weights)) {
  if (dim_a_ == 0) throw InputError("weight system: dim_a must be at least 1");
  if (weights_.empty()) throw InputError("weight system: at least one weight is required");
  as_double_.resize(static_cast<Eigen::Index>(weights_.size()), static_cast<Eigen::Index>(dim_a_));
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].size() != dim_a_) {
      throw InputError("weight system: weight " + std::to_string(i) + " has dimension " +
                       std::to_string(weights_[i].size()) + ", expected " + std::to_string(dim_a_));
    }
    as_double_.row(static_cast<Eigen::Index>(i)) = to_double(weights_[i]).transpose();
  }
}

ProjPoint::ProjPoint(const std::vector<std::complex<double>>& coords, std::vector<std::size_t> support)
    : support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  if (support_.empty()) throw InputError("projective point: empty support");
  if (support_.back() >= coords.size()) throw InputError("projective point: support index out of range");
  log_modulus_.assign(coords.size(), kNegInf);
  phase_.assign(coords.size(), 0.0);
  std::size_t s = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& z = coords[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InputError("projective point: non-finite coordinate " + std::to_string(i));
    const bool declared = s < support_.size() && support_[s] == i;
    if (declared) {
      ++s;
      if (z == 0.0) throw InputError("projective point: coordinate " + std::to_string(i) + " is in the support but zero");
      log_modulus_[i] = std::log(std::abs(z));
      phase_[i] = std::arg(z);
    } else if (z != 0.0) {
      throw InputError("projective point: coordinate " + std::to_string(i) + " is nonzero but outside the support");
    }
  }
  normalize();
}

ProjPoint ProjPoint::from_coords(const std::vector<std::complex<double>>& coords) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0.0) support.push_back(i);
  return ProjPoint(coords, std::move(support));
}

ProjPoint ProjPoint::basis(std::size_t size, std::size_t i) {
  std::vector<std::complex<double>> z(size, 0.0);
  z.at(i) = 1.0;
  return ProjPoint(z, {i});
}

bool ProjPoint::in_support(std::size_t i) const {
  return std::binary_search(support_.begin(), support_.end(), i);
}

void ProjPoint::normalize() {
  const double half_log_norm = 0.5 * log_sum_exp2(log_modulus_, support_);
  for (auto i : support_) log_modulus_[i] -= half_log_norm;
}

std::vector<std::complex<double>> ProjPoint::coords() const {
  std::vector<std::complex<double>> z(size(), 0.0);
  for (auto i : support_) {
    const double r = std::exp(log_modulus_[i]);
    // keep real points exactly real
    if (phase_[i] == 0.0) z[i] = r;
    else if (phase_[i] == std::numbers::pi) z[i] = -r;
    else z[i] = std::polar(r, phase_[i]);
  }
  return z;
}

ProjPoint ProjPoint::rescaled(const std::vector<double>& shift) const {
  ProjPoint y = *this;
  for (auto i : support_) y.log_modulus_[i] += shift[i];
  y.normalize();
  return y;
}

ProjPoint ProjPoint::restricted(const std::vector<std::size_t>& subset) const {
  if (subset.empty()) throw InputError("projective point: restriction to an empty set");
  ProjPoint y;
  y.log_modulus_.assign(size(), kNegInf);
  y.phase_.assign(size(), 0.0);
  y.support_ = subset;
  std::sort(y.support_.begin(), y.support_.end());
  for (auto i : y.support_) {
    if (!in_support(i)) throw InputError("projective point: restriction leaves the support");
    y.log_modulus_[i] = log_modulus_[i];
    y.phase_[i] = phase_[i];
  }
  y.normalize();
  return y;
}

Subalgebra::Subalgebra(std::size_t ambient_dim, const RationalMatrix& spanning)
    : ambient_dim_(ambient_dim), echelon_(row_echelon(spanning, ambient_dim)) {}

bool Subalgebra::contains(const RationalVec& xi) const {
  if (xi.size() != ambient_dim_) throw InputError("subalgebra: dimension mismatch");
  return echelon_.spans(xi);
}

Subalgebra Subalgebra::orthogonal_complement() const {
  if (echelon_.rank() == 0) {
    RationalMatrix eye(ambient_dim_, zeros(ambient_dim_));
    for (std::size_t i = 0; i < ambient_dim_; ++i) eye[i][i] = 1;
    return Subalgebra(ambient_dim_, eye);
  }
  return Subalgebra(ambient_dim_, echelon_.kernel());
}

void check_compatible(const WeightSystem& W, const ProjPoint& x) {
  if (x.size() != W.size()) {
    throw InputError("point has " + std::to_string(x.size()) + " homogeneous coordinates, weight system has " +
                     std::to_string(W.size()));
  }
}

ProjPoint act(const WeightSystem& W, const Eigen::VectorXd& v, const ProjPoint& x) {
  check_compatible(W, x);
  if (static_cast<std::size_t>(v.size()) != W.dim_a()) throw InputError("act: v has the wrong dimension");
  if (!v.allFinite()) throw InputError("act: non-finite group element");
  if (v.isZero()) return x;
  const Eigen::VectorXd pair = W.weight_matrix() * v;
  return x.rescaled(std::vector<double>(pair.data(), pair.data() + pair.size()));
}

Subalgebra weight_differences(const WeightSystem& W, const std::vector<std::size_t>& support) {
  RationalMatrix diffs;
  for (std::size_t j = 1; j < support.size(); ++j) diffs.push_back(W.weight(support[j]) - W.weight(support[0]));
  return Subalgebra(W.dim_a(), diffs);
}

Subalgebra stabilizer_algebra(const WeightSystem& W, const ProjPoint& x) {
  check_compatible(W, x);
  return weight_differences(W, x.support()).orthogonal_complement();
}

bool is_fixed(const WeightSystem& W, const ProjPoint& x) {
  check_compatible(W, x);
  const auto& s = x.support();
  return std::all_of(s.begin(), s.end(), [&](std::size_t i) { return W.weight(i) == W.weight(s.front()); });
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ProjPoint random_point(const WeightSystem& W, std::vector<std::size_t> support_pattern, std::uint64_t seed) {
  if (support_pattern.empty()) throw InputError("random_point: empty support pattern");
  std::sort(support_pattern.begin(), support_pattern.end());
  support_pattern.erase(std::unique(support_pattern.begin(), support_pattern.end()), support_pattern.end());
  if (support_pattern.back() >= W.size()) throw InputError("random_point: support index out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.25, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<std::complex<double>> z(W.size(), 0.0);
  for (auto i : support_pattern) {
    const double r = modulus(rng);
    z[i] = std::polar(r, angle(rng));
  }
  return ProjPoint(z, std::move(support_pattern));
}

ProjPoint random_real_point(const WeightSystem& W, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> z(W.size(), 0.0);
  for (auto& c : z) c = gauss(rng);
  return ProjPoint::from_coords(z);
}

double projective_distance(const ProjPoint& x, const ProjPoint& y) {
  if (x.size() != y.size()) throw InputError("projective_distance: size mismatch");
  const auto a = x.coords();
  const auto b = y.coords();
  std::complex<double> ip = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return std::sqrt(std::max(0.0, 1.0 - std::norm(ip)));
}

}  // namespace tconv
