#include "tconv/orbitgeom.hpp"

#include <algorithm>
#include <map>

#include "tconv/errors.hpp"

namespace tconv {
namespace {

void check_beta(const WeightSystem& W, const RationalVec& beta) {
  if (beta.size() != W.dim_a()) {
    throw InputError("beta has dimension " + std::to_string(beta.size()) + ", expected " +
                     std::to_string(W.dim_a()));
  }
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

Polytope hull_of_support(const WeightSystem& W, const std::vector<std::size_t>& support) {
  std::vector<RationalVec> pts;
  pts.reserve(support.size());
  for (auto i : support) pts.push_back(W.weight(i));
  return convex_hull(pts);
}

}  // namespace

FlowResult flow_limit(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta) {
  check_compatible(W, x);
  check_beta(W, beta);
  FlowResult out{x, Rational(0), {}};
  if (is_zero(beta)) {
    out.limit_support = x.support();
    return out;
  }
  bool first = true;
  for (auto i : x.support()) {
    Rational h = W.pairing(i, beta);
    if (first || h > out.achieved_value) {
      out.achieved_value = h;
      out.limit_support.assign(1, i);
      first = false;
    } else if (h == out.achieved_value) {
      out.limit_support.push_back(i);
    }
  }
  out.limit = x.restricted(out.limit_support);
  return out;
}

Rational projective_max(const WeightSystem& W, const RationalVec& beta) {
  check_beta(W, beta);
  Rational m = W.pairing(0, beta);
  for (std::size_t i = 1; i < W.size(); ++i) m = std::max(m, W.pairing(i, beta));
  return m;
}

bool wmax_membership(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta, const Rational& x_max) {
  return flow_limit(W, x, beta).achieved_value == x_max;
}

Polytope orbit_polytope(const WeightSystem& W, const ProjPoint& x) {
  check_compatible(W, x);
  return hull_of_support(W, x.support());
}

InversionResult invert_moment(const WeightSystem& W, const ProjPoint& x, const RationalVec& target,
                              const NewtonOptions& opts) {
  check_compatible(W, x);
  check_beta(W, target);
  const Polytope P = orbit_polytope(W, x);
  const Membership m = contains(P, target);
  if (m != Membership::Interior) {
    throw TargetNotAttained("target " + format_rational_vec(target) + " is " + to_string(m) +
                            " of the orbit polytope; only relative-interior targets are attained at finite v");
  }
  const Eigen::MatrixXd B = orthonormal_basis(W.dim_a(), weight_differences(W, x.support()).basis());
  const Eigen::VectorXd t = to_double(target);
  if (B.cols() == 0) {
    InversionResult r;
    r.v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.dim_a()));
    r.residual = (moment_map(W, x) - t).norm();
    return r;
  }
  ConvexPotential pot{
      [&](const Eigen::VectorXd& v) { return kn_value(W, x, v); },
      [&](const Eigen::VectorXd& v) { return moment_map_at(W, x, v); },
      [&](const Eigen::VectorXd& v) { return kn_derivatives(W, x, v).hessian; },
  };
  return newton_legendre(pot, t, B, opts);
}

CriticalData critical_data(const WeightSystem& W, const RationalVec& beta) {
  check_beta(W, beta);
  if (is_zero(beta)) throw InputError("critical_data: beta = 0 makes every point critical");
  std::map<Rational, std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < W.size(); ++i) levels[W.pairing(i, beta)].push_back(i);
  CriticalData out;
  for (auto& [value, idx] : levels) {
    out.values.push_back(value);
    out.level_supports.push_back(std::move(idx));
  }
  return out;
}

FaceOrbit face_orbit(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta) {
  check_compatible(W, x);
  check_beta(W, beta);
  if (is_zero(beta)) throw InputError("face_orbit: beta = 0 does not expose a face");
  const CriticalData crit = critical_data(W, beta);
  const auto& top = crit.level_supports.back();
  bool meets = std::any_of(top.begin(), top.end(), [&](std::size_t i) { return x.in_support(i); });
  if (!meets) {
    std::string idx;
    for (auto i : top) idx += (idx.empty() ? "" : ",") + std::to_string(i);
    throw InputError("face_orbit: support of x misses every top-level index {" + idx + "} of beta");
  }
  FlowResult flow = flow_limit(W, x, beta);
  Polytope face = orbit_polytope(W, flow.limit);
  const Polytope P = orbit_polytope(W, x);
  const bool same = face == face_polytope(P, exposed_face(P, beta));
  return FaceOrbit{std::move(flow.limit), std::move(face), same};
}

std::vector<VertexWitness> vertex_witnesses(const WeightSystem& W, const ProjPoint& x) {
  const Polytope P = orbit_polytope(W, x);
  std::vector<std::pair<RationalVec, RationalVec>> vertex_beta;
  if (P.dim() == 0) {
    vertex_beta.emplace_back(P.vertices().front(), zeros(W.dim_a()));
  } else {
    for (const auto& f : proper_faces(P)) {
      if (f.vertex_indices.size() == 1) vertex_beta.emplace_back(P.vertices()[f.vertex_indices[0]], f.selector);
    }
  }
  std::vector<VertexWitness> out;
  for (auto& [vertex, beta] : vertex_beta) {
    VertexWitness w{vertex, beta, flow_limit(W, x, beta)};
    w.fixed = is_fixed(W, w.flow.limit);
    w.matches = rational_moment(W, w.flow.limit) == vertex;
    out.push_back(std::move(w));
  }
  return out;
}

Rational gap_scale(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta) {
  check_beta(W, beta);
  std::vector<Rational> levels;
  for (auto i : x.support()) levels.push_back(W.pairing(i, beta));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() < 2) return Rational(1);
  return 1 / (levels[levels.size() - 1] - levels[levels.size() - 2]);
}

Eigen::VectorXd gap_normalized(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta) {
  return to_double(gap_scale(W, x, beta) * beta);
}

std::vector<double> flow_profile(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& beta,
                                 const std::vector<double>& times) {
  if (static_cast<std::size_t>(beta.size()) != W.dim_a()) throw InputError("flow_profile: beta has the wrong dimension");
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(moment_map_at(W, x, t * beta).dot(beta));
  return out;
}

const char* to_string(SampleFamily f) {
  switch (f) {
    case SampleFamily::FullSupport: return "full";
    case SampleFamily::RealPoints: return "real";
    case SampleFamily::SupportPattern: return "pattern";
  }
  return "?";
}

DensityReport density_experiment(const WeightSystem& W, const XSpec& spec, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("density_experiment: samples must be at least 1");
  DensityReport rep;
  rep.family = spec.family;
  rep.seed = seed;
  rep.samples = samples;
  rep.polytope = hull_of_support(W, all_indices(W.size()));
  rep.vertex_membership.assign(rep.polytope.vertices().size(), 0);

  // The orbit polytope depends on the support only.
  std::map<std::vector<std::size_t>, std::pair<bool, std::vector<bool>>> by_support;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sub = mix_seed(seed, static_cast<std::uint64_t>(s));
    ProjPoint x = [&] {
      switch (spec.family) {
        case SampleFamily::RealPoints: return random_real_point(W, sub);
        case SampleFamily::SupportPattern: return random_point(W, spec.pattern, sub);
        case SampleFamily::FullSupport: break;
      }
      return random_point(W, all_indices(W.size()), sub);
    }();
    auto it = by_support.find(x.support());
    if (it == by_support.end()) {
      const Polytope Q = orbit_polytope(W, x);
      std::vector<bool> in(rep.polytope.vertices().size());
      for (std::size_t v = 0; v < in.size(); ++v) {
        const Membership m = contains(Q, rep.polytope.vertices()[v]);
        in[v] = m == Membership::Interior || m == Membership::Boundary;
      }
      it = by_support.emplace(x.support(), std::make_pair(Q == rep.polytope, std::move(in))).first;
    }
    if (it->second.first) ++rep.successes;
    for (std::size_t v = 0; v < it->second.second.size(); ++v)
      if (it->second.second[v]) ++rep.vertex_membership[v];
  }
  return rep;
}

BoundaryReport boundary_stabilizer_check(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta) {
  BoundaryReport rep;
  rep.dim_stab_x = stabilizer_algebra(W, x).dim();
  if (is_fixed(W, x)) {
    rep.dim_stab_y = rep.dim_stab_x;
    return rep;
  }
  const FlowResult flow = flow_limit(W, x, beta);
  rep.dim_stab_y = stabilizer_algebra(W, flow.limit).dim();
  rep.limit_membership = contains(orbit_polytope(W, x), rational_moment(W, flow.limit));
  rep.applicable = rep.limit_membership == Membership::Boundary;
  rep.pass = !rep.applicable || rep.dim_stab_y > rep.dim_stab_x;
  return rep;
}

}  // namespace tconv
