#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tconv/hull.hpp"
#include "tconv/kempfness.hpp"
#include "tconv/legendre.hpp"
#include "tconv/weights.hpp"

namespace tconv {

/// lim_{t -> +inf} exp(t beta) . x
struct FlowResult {
  ProjPoint limit;
  Rational achieved_value;                 // max_{i in supp x} <alpha_i, beta>
  std::vector<std::size_t> limit_support;  // indices of supp x attaining it
};

/// Distinct values of <alpha_i, beta> over all weights, ascending, with their level sets.
struct CriticalData {
  std::vector<Rational> values;
  std::vector<std::vector<std::size_t>> level_supports;
};

/// Flow limit by top-level support selection. beta = 0 returns x.
FlowResult flow_limit(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta);

/// max_i <alpha_i, beta> over all weights: the maximum of mu_a^beta on P^n.
Rational projective_max(const WeightSystem& W, const RationalVec& beta);

/// Whether the flow limit of x along beta attains x_max.
bool wmax_membership(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta, const Rational& x_max);

/// conv{alpha_i : i in supp x}, the closure of mu_a(A . x).
Polytope orbit_polytope(const WeightSystem& W, const ProjPoint& x);

/// Newton solve of mu_a(exp(v) x) = target. Rejects targets off the relative interior with TargetNotAttained.
InversionResult invert_moment(const WeightSystem& W, const ProjPoint& x, const RationalVec& target,
                              const NewtonOptions& opts = {});

/// Throws InputError for beta = 0.
CriticalData critical_data(const WeightSystem& W, const RationalVec& beta);

struct FaceOrbit {
  ProjPoint y;                  // phi_inf^beta(x)
  Polytope face;                // orbit_polytope(y)
  bool matches_exposed_face;    // face == exposed_face(orbit_polytope(x), beta)
};

/**
 * Orbit whose closure image is the face of the orbit polytope exposed by beta.
 * Requires beta != 0 and supp(x) to meet the top beta-level of the weights.
 */
FaceOrbit face_orbit(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta);

/// Flow-limit witness for one vertex of an orbit polytope.
struct VertexWitness {
  RationalVec vertex;
  RationalVec beta;
  FlowResult flow;
  bool fixed = false;        // the limit is an A-fixed point
  bool matches = false;      // rational moment of the limit equals the vertex
};

/// One witness per vertex of orbit_polytope(W, x), exposing selectors from the face lattice.
std::vector<VertexWitness> vertex_witnesses(const WeightSystem& W, const ProjPoint& x);

/// t -> <mu_a(exp(t beta) x), beta> on a grid.
std::vector<double> flow_profile(const WeightSystem& W, const ProjPoint& x, const Eigen::VectorXd& beta,
                                 const std::vector<double>& times);

/**
 * beta rescaled so the gap between its two highest levels on supp(x) is 1
 * (unchanged if supp(x) has a single level). Flows along it converge at
 * rate e^{-2t} relative to the top level.
 */
Eigen::VectorXd gap_normalized(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta);

/// Scale factor used by gap_normalized (1 / gap, or 1).
Rational gap_scale(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta);

enum class SampleFamily { FullSupport, RealPoints, SupportPattern };

const char* to_string(SampleFamily f);

struct XSpec {
  SampleFamily family = SampleFamily::FullSupport;
  std::vector<std::size_t> pattern;  // SupportPattern only
};

/**
 * Density experiment: fraction of sampled points whose orbit polytope is the
 * full polytope P = conv(all weights), and per-vertex membership counts for
 * Omega_i = {x : xi_i in orbit_polytope(x)}.
 */
struct DensityReport {
  SampleFamily family = SampleFamily::FullSupport;
  std::uint64_t seed = 0;
  int samples = 0;
  int successes = 0;
  Polytope polytope;
  std::vector<int> vertex_membership;  // aligned with polytope.vertices()

  Rational success_fraction() const { return samples ? ratio(successes, samples) : Rational(0); }
};

DensityReport density_experiment(const WeightSystem& W, const XSpec& spec, int samples, std::uint64_t seed);

struct BoundaryReport {
  bool applicable = false;      // mu_a(y) lies on the relative boundary
  bool pass = true;
  std::size_t dim_stab_x = 0;
  std::size_t dim_stab_y = 0;
  Membership limit_membership = Membership::Interior;
};

/// dim a_y > dim a_x whenever y = phi_inf^beta(x) has moment on the relative boundary. Fixed x passes vacuously.
BoundaryReport boundary_stabilizer_check(const WeightSystem& W, const ProjPoint& x, const RationalVec& beta);

}  // namespace tconv
