#include "tconv/cli/suite.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "tconv/hull.hpp"
#include "tconv/kempfness.hpp"
#include "tconv/measures.hpp"
#include "tconv/orbitgeom.hpp"

namespace tconv::cli {
namespace {

constexpr double kCoordTol = 1e-12;
constexpr double kTranslationTol = 1e-10;
constexpr double kHessianRelTol = 1e-6;
constexpr double kFlowTol = 1e-9;
constexpr double kSupportTol = 1e-8;

class Check {
 public:
  Check(std::string name, std::string subject) { r_.name = std::move(name), r_.subject = std::move(subject); }

  void observe(bool ok, double residual, const std::string& what) {
    ++r_.checked;
    if (std::isfinite(residual)) r_.worst = std::max(r_.worst, residual);
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.detail = what;
    }
  }
  void observe(bool ok, const std::string& what) { observe(ok, 0.0, what); }
  InvariantResult done() { return std::move(r_); }

 private:
  InvariantResult r_;
};

std::uint64_t name_stream(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

Eigen::VectorXd uniform(std::mt19937_64& rng, std::size_t k, double r) {
  return detail::uniform_vec(rng, k, r);
}

RationalVec random_beta(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> d(-3, 3);
  RationalVec b = zeros(k);
  do {
    for (auto& e : b) e = d(rng);
  } while (is_zero(b));
  return b;
}

// Strictly positive rational combination of the weights on `support`.
RationalVec interior_combination(std::mt19937_64& rng, const WeightSystem& W, const std::vector<std::size_t>& support) {
  std::uniform_int_distribution<int> d(1, 9);
  std::vector<int> c(support.size());
  int total = 0;
  for (auto& e : c) total += (e = d(rng));
  RationalVec out = zeros(W.dim_a());
  for (std::size_t s = 0; s < support.size(); ++s) out = out + ratio(c[s], total) * W.weight(support[s]);
  return out;
}

std::string vec_str(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << '(' << v.transpose() << ')';
  return os.str();
}

double max_coord_diff(const ProjPoint& a, const ProjPoint& b) {
  const auto za = a.coords();
  const auto zb = b.coords();
  double m = 0;
  for (std::size_t i = 0; i < za.size(); ++i) m = std::max(m, std::abs(za[i] - zb[i]));
  return m;
}

InvariantResult kn_axioms(const PropertyReport& rep, const std::string& name, const std::string& subject) {
  InvariantResult r;
  r.name = name;
  r.subject = subject;
  r.pass = rep.pass();
  r.checked = rep.trials;
  r.worst = std::max(rep.cocycle.worst, rep.gradient.worst);
  if (!rep.cocycle.pass) r.detail = "cocycle residual " + std::to_string(rep.cocycle.worst);
  else if (!rep.gradient.pass) r.detail = "gradient finite-difference mismatch " + std::to_string(rep.gradient.worst);
  else if (!rep.convexity.pass) r.detail = "negative second difference " + std::to_string(-rep.convexity.worst);
  else if (!rep.stabilizer.pass) r.detail = "second difference does not vanish exactly on the stabilizer";
  return r;
}

}  // namespace

std::vector<InvariantResult> verify_weights(const WeightSystem& W, const SuiteOptions& opt) {
  std::vector<InvariantResult> out;
  const std::string subject = "weights";
  const Polytope P = convex_hull(W.weights());

  {
    Check c("hull.idempotence", subject);
    c.observe(convex_hull(P.vertices()) == P, "hull of the vertex list differs from the hull");
    out.push_back(c.done());
  }
  {
    Check c("hull.interior_certificate", subject);
    RationalVec bary = zeros(W.dim_a());
    for (const auto& v : P.vertices()) bary = bary + ratio(1, static_cast<long>(P.vertices().size())) * v;
    auto lambda = interior_certificate(P, bary);
    bool ok = contains(P, bary) == Membership::Interior && lambda.has_value();
    if (ok) {
      RationalVec recon = zeros(W.dim_a());
      Rational total(0);
      for (std::size_t j = 0; j < lambda->size(); ++j) {
        ok = ok && (*lambda)[j] > 0;
        recon = recon + (*lambda)[j] * P.vertices()[j];
        total += (*lambda)[j];
      }
      ok = ok && total == 1 && recon == bary;
    }
    c.observe(ok, "barycenter has no strictly positive certificate");
    out.push_back(c.done());
  }
  for (SampleFamily fam : {SampleFamily::FullSupport, SampleFamily::RealPoints}) {
    Check c(std::string("orbitgeom.density_") + to_string(fam), subject);
    const DensityReport rep = density_experiment(W, XSpec{fam, {}}, opt.samples, opt.seed);
    c.observe(rep.successes == rep.samples, 1.0 - rep.success_fraction().get_d(),
              "success fraction " + format_rational(rep.success_fraction()));
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.face_orbit", subject);
    const ProjPoint x = random_point(W, all_indices(W.size()), mix_seed(opt.seed, 0xface));
    for (const auto& f : proper_faces(P)) {
      const FaceOrbit fo = face_orbit(W, x, f.selector);
      c.observe(fo.matches_exposed_face && fo.face == face_polytope(P, f),
                "face exposed by " + format_rational_vec(f.selector) + " not reproduced");
    }
    out.push_back(c.done());
  }
  return out;
}

std::vector<InvariantResult> verify_point(const WeightSystem& W, const NamedPoint& np, const SuiteOptions& opt) {
  std::vector<InvariantResult> out;
  const ProjPoint& x = np.point;
  const std::string& subject = np.name;
  const std::size_t k = W.dim_a();
  const Subalgebra stab = stabilizer_algebra(W, x);
  const Subalgebra diffs = weight_differences(W, x.support());
  const Polytope P = orbit_polytope(W, x);
  const RationalVec mu_x = rational_moment(W, x);
  const Eigen::VectorXd mu_x_d = moment_map(W, x);
  std::mt19937_64 rng(mix_seed(opt.seed, name_stream(subject)));
  const int light = std::max(1, opt.samples / 10);

  {
    Check c("weights.group_law", subject);
    for (int t = 0; t < light; ++t) {
      const Eigen::VectorXd v = uniform(rng, k, 1.0), w = uniform(rng, k, 1.0);
      const double d = max_coord_diff(act(W, v, act(W, w, x)), act(W, v + w, x));
      c.observe(d <= kCoordTol, d, "composition mismatch " + std::to_string(d));
    }
    out.push_back(c.done());
  }
  {
    Check c("weights.stabilizer", subject);
    for (const auto& b : stab.basis()) {
      const Eigen::VectorXd xi = to_double(b);
      for (int s = -10; s <= 10; ++s) {
        const double d = max_coord_diff(act(W, 0.5 * s * xi, x), x);
        c.observe(d <= kCoordTol, d, "stabilizer direction moves the point by " + std::to_string(d));
      }
    }
    for (int t = 0; t < light; ++t) {
      const RationalVec xi = random_beta(rng, k);
      if (stab.contains(xi)) continue;
      const double d = projective_distance(act(W, to_double(xi), x), x);
      c.observe(d > 0, "non-stabilizer direction " + format_rational_vec(xi) + " fixes the point");
    }
    out.push_back(c.done());
  }
  {
    Check c("weights.support_preserved", subject);
    for (int t = 0; t < light; ++t) {
      const Eigen::VectorXd v = uniform(rng, k, 50.0);
      c.observe(act(W, v, x).support() == x.support(), "support changed under the action");
    }
    out.push_back(c.done());
  }

  out.push_back(kn_axioms(check_properties(PointModel(W, x), opt.kn_trials, opt.seed), "kempfness.axioms", subject));

  {
    Check c("kempfness.hessian", subject);
    const double h = 1e-4;
    for (int t = 0; t < light; ++t) {
      const Eigen::VectorXd v = uniform(rng, k, 1.0);
      const KNEvaluation ev = kn_derivatives(W, x, v);
      const double scale = std::max(1.0, ev.hessian.norm());
      double err = 0;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          Eigen::VectorXd ei = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k)), ej = ei;
          ei[static_cast<Eigen::Index>(i)] = h;
          ej[static_cast<Eigen::Index>(j)] = h;
          const double fd = (kn_value(W, x, v + ei + ej) - kn_value(W, x, v + ei - ej) -
                             kn_value(W, x, v - ei + ej) + kn_value(W, x, v - ei - ej)) /
                            (4 * h * h);
          err = std::max(err, std::abs(fd - ev.hessian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
      }
      const double asym = (ev.hessian - ev.hessian.transpose()).cwiseAbs().maxCoeff();
      const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ev.hessian).eigenvalues().minCoeff();
      c.observe(err / scale <= kHessianRelTol && asym <= 1e-12 && min_eig >= -1e-10, err / scale,
                "Hessian mismatch at v = " + vec_str(v));
    }
    out.push_back(c.done());
  }
  {
    Check c("kempfness.translation_identity", subject);
    for (int s = 0; s < opt.samples; ++s) {
      const Eigen::VectorXd v = uniform(rng, k, 2.0);
      const Eigen::VectorXd dmu = moment_map_at(W, x, v) - mu_x_d;
      for (const auto& b : stab.basis()) {
        const double r = std::abs(dmu.dot(to_double(b)));
        c.observe(r <= kTranslationTol, r, "moment drifts along the stabilizer at v = " + vec_str(v));
      }
    }
    out.push_back(c.done());
  }
  {
    Check a("kempfness.affine_subspace", subject);
    Check b("orbitgeom.image_containment", subject);
    for (int s = 0; s < opt.samples; ++s) {
      const Eigen::VectorXd v = uniform(rng, k, 2.0);
      const RationalVec mu = rational_moment(W, act(W, v, x));
      a.observe(diffs.contains(mu - mu_x), "moment leaves mu(x) + a_x^perp at v = " + vec_str(v));
      b.observe(contains(P, mu) == Membership::Interior, "sampled moment not interior at v = " + vec_str(v));
    }
    out.push_back(a.done());
    out.push_back(b.done());
  }
  {
    Check c("orbitgeom.affine_hull_is_stabilizer_complement", subject);
    c.observe(P.affine_basis() == diffs.basis(), "affine hull directions differ from a_x^perp");
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.vertex_attainment", subject);
    const auto wit = vertex_witnesses(W, x);
    c.observe(wit.size() == P.vertices().size(), "not every vertex has an exposing witness");
    for (const auto& w : wit)
      c.observe(w.fixed && w.matches, "vertex " + format_rational_vec(w.vertex) + " not attained by a fixed flow limit");
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.legendre_roundtrip", subject);
    for (int t = 0; t < opt.targets; ++t) {
      const RationalVec target = interior_combination(rng, W, x.support());
      try {
        const InversionResult r = invert_moment(W, x, target, NewtonOptions{opt.tol, 100});
        c.observe(r.residual <= opt.tol, r.residual, "residual " + std::to_string(r.residual));
      } catch (const std::exception& e) {
        c.observe(false, std::string("inversion failed: ") + e.what());
      }
    }
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.midpoint_convexity", subject);
    for (int t = 0; t < opt.targets; ++t) {
      const Eigen::VectorXd v1 = uniform(rng, k, 2.0), v2 = uniform(rng, k, 2.0);
      const RationalVec mid =
          ratio(1, 2) * (rational_moment(W, act(W, v1, x)) + rational_moment(W, act(W, v2, x)));
      try {
        const InversionResult r = invert_moment(W, x, mid, NewtonOptions{opt.tol, 100});
        c.observe(r.residual <= opt.tol, r.residual, "midpoint residual " + std::to_string(r.residual));
      } catch (const std::exception& e) {
        c.observe(false, std::string("midpoint not attained: ") + e.what());
      }
    }
    out.push_back(c.done());
  }
  if (P.dim() > 0) {
    Check c("orbitgeom.boundary_rejected", subject);
    for (const auto& f : proper_faces(P)) {
      RationalVec target = zeros(k);
      for (auto i : f.vertex_indices)
        target = target + ratio(1, static_cast<long>(f.vertex_indices.size())) * P.vertices()[i];
      bool rejected = false;
      try {
        invert_moment(W, x, target);
      } catch (const TargetNotAttained&) {
        rejected = true;
      }
      c.observe(rejected, "boundary target " + format_rational_vec(target) + " was not rejected");
    }
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.face_functoriality", subject);
    for (int t = 0; t < opt.betas; ++t) {
      const RationalVec beta = random_beta(rng, k);
      const Polytope lhs = face_polytope(P, exposed_face(P, beta));
      const Polytope rhs = orbit_polytope(W, flow_limit(W, x, beta).limit);
      c.observe(lhs == rhs, "exposed face and flow-limit orbit differ for beta = " + format_rational_vec(beta));
    }
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.flow_monotone", subject);
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(0.1 * i);
    for (int t = 0; t < std::min(opt.betas, 20); ++t) {
      const RationalVec beta = random_beta(rng, k);
      const Rational s = gap_scale(W, x, beta);
      const auto prof = flow_profile(W, x, to_double(s * beta), grid);
      bool mono = true;
      for (std::size_t i = 1; i < prof.size(); ++i)
        mono = mono && prof[i] >= prof[i - 1] - 1e-12 * (1 + std::abs(prof[i - 1]));
      const double limit = Rational(s * flow_limit(W, x, beta).achieved_value).get_d();
      const double gap = std::abs(prof.back() - limit);
      c.observe(mono && gap <= kFlowTol, gap,
                "flow along " + format_rational_vec(beta) + (mono ? " misses its limit" : " is not monotone"));
    }
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.boundary_stabilizer", subject);
    std::vector<RationalVec> betas;
    for (const auto& f : proper_faces(P)) betas.push_back(f.selector);
    for (int t = 0; t < 20; ++t) betas.push_back(random_beta(rng, k));
    for (const auto& beta : betas) {
      const BoundaryReport r = boundary_stabilizer_check(W, x, beta);
      c.observe(r.pass, "stabilizer does not grow at the boundary for beta = " + format_rational_vec(beta));
    }
    out.push_back(c.done());
  }
  {
    Check c("orbitgeom.wmax_membership", subject);
    for (int t = 0; t < opt.betas; ++t) {
      const RationalVec beta = random_beta(rng, k);
      const CriticalData crit = critical_data(W, beta);
      bool meets = false;
      for (auto i : crit.level_supports.back()) meets = meets || x.in_support(i);
      c.observe(wmax_membership(W, x, beta, projective_max(W, beta)) == meets,
                "W_max membership disagrees with the top critical level for beta = " + format_rational_vec(beta));
    }
    out.push_back(c.done());
  }
  return out;
}

std::vector<InvariantResult> verify_measure(const WeightSystem& W, const NamedMeasure& nm, const SuiteOptions& opt) {
  std::vector<InvariantResult> out;
  const DiscreteMeasure& nu = nm.measure;
  const std::string& subject = nm.name;
  const std::size_t k = W.dim_a();
  const Polytope P = measure_orbit_polytope(W, nu);
  std::mt19937_64 rng(mix_seed(opt.seed, name_stream("measure:" + subject)));

  out.push_back(
      kn_axioms(check_properties(MeasureModel(W, nu), opt.kn_trials, opt.seed), "measures.axioms", subject));

  {
    Check c("measures.linearity", subject);
    RationalVec sum = zeros(k);
    for (const auto& a : nu.atoms()) sum = sum + a.weight * rational_moment(W, a.point);
    c.observe(sum == measure_rational_moment(W, nu), "rational moment is not the weighted atom sum");
    const double d = (measure_moment(W, nu) - to_double(sum)).norm();
    c.observe(d <= 1e-12, d, "floating moment disagrees with the exact one");
    out.push_back(c.done());
  }
  {
    Check c("measures.image_containment", subject);
    for (int s = 0; s < opt.samples; ++s) {
      const Eigen::VectorXd v = uniform(rng, k, 2.0);
      const RationalVec phi = measure_rational_moment(W, pushforward(W, v, nu));
      c.observe(contains(P, phi) == Membership::Interior, "sampled Phi not interior at v = " + vec_str(v));
    }
    out.push_back(c.done());
  }
  {
    Check a("hull.minkowski_support_identity", subject);
    Check b("measures.support_function", subject);
    std::vector<Polytope> parts;
    for (const auto& at : nu.atoms()) parts.push_back(orbit_polytope(W, at.point));
    for (int t = 0; t < opt.support_betas; ++t) {
      const RationalVec beta = random_beta(rng, k);
      Rational sum(0);
      for (std::size_t j = 0; j < parts.size(); ++j) sum += nu.atoms()[j].weight * support_function(parts[j], beta);
      a.observe(sum == support_function(P, beta), "support functions disagree at " + format_rational_vec(beta));

      const RationalVec scaled = measure_gap_scale(W, nu, beta) * beta;
      const Eigen::VectorXd bd = to_double(scaled);
      const double approx = measure_moment(W, pushforward(W, opt.support_time * bd, nu)).dot(bd);
      const double gap = std::abs(approx - support_function(P, scaled).get_d());
      b.observe(gap <= kSupportTol, gap, "support function not approached along " + format_rational_vec(scaled));
    }
    out.push_back(a.done());
    out.push_back(b.done());
  }
  {
    Check c("measures.vertex_attainment", subject);
    const auto wit = measure_vertex_witnesses(W, nu);
    c.observe(wit.size() == P.vertices().size(), "not every vertex has an exposing witness");
    for (const auto& w : wit)
      c.observe(w.fixed && w.matches, "vertex " + format_rational_vec(w.vertex) + " not attained by a fixed limit");
    out.push_back(c.done());
  }
  {
    Check c("measures.invert_roundtrip", subject);
    for (int t = 0; t < opt.targets; ++t) {
      RationalVec target = zeros(k);
      for (const auto& a : nu.atoms()) target = target + a.weight * interior_combination(rng, W, a.point.support());
      try {
        const InversionResult r = measure_invert(W, nu, target, NewtonOptions{opt.tol, 100});
        c.observe(r.residual <= opt.tol, r.residual, "residual " + std::to_string(r.residual));
      } catch (const std::exception& e) {
        c.observe(false, std::string("inversion failed: ") + e.what());
      }
    }
    if (P.dim() > 0) {
      for (const auto& v : P.vertices()) {
        bool rejected = false;
        try {
          measure_invert(W, nu, v);
        } catch (const TargetNotAttained&) {
          rejected = true;
        }
        c.observe(rejected, "vertex target " + format_rational_vec(v) + " was not rejected");
      }
    }
    out.push_back(c.done());
  }
  return out;
}

}  // namespace tconv::cli
