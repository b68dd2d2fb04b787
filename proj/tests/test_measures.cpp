#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tconv/errors.hpp"
#include "tconv/measures.hpp"
#include "tconv/orbitgeom.hpp"

using namespace tconv;
using testsupport::q;
using testsupport::qi;
using testsupport::real_point;

namespace {

DiscreteMeasure two_atoms(ProjPoint a, const char* wa, ProjPoint b, const char* wb) {
  return DiscreteMeasure({Atom{std::move(a), parse_rational(wa)}, Atom{std::move(b), parse_rational(wb)}});
}

}  // namespace

TEST(Measure, Validation) {
  EXPECT_THROW(DiscreteMeasure({}), InputError);
  EXPECT_THROW(two_atoms(real_point({1, 1}), "1/2", real_point({1, 0}), "1/3"), InputError);
  EXPECT_THROW(two_atoms(real_point({1, 1}), "3/2", real_point({1, 0}), "-1/2"), InputError);
  EXPECT_THROW(two_atoms(real_point({1, 1}), "1/2", real_point({1, 0, 0}), "1/2"), InputError);
  EXPECT_EQ(DiscreteMeasure::dirac(real_point({1, 1})).size(), 1u);
}

TEST(Pushforward, Contract) {
  const WeightSystem W = testsupport::unit_simplex(2);
  const DiscreteMeasure nu = two_atoms(real_point({1, 1, 1}), "1/2", real_point({1, 2, 0}), "1/2");
  const DiscreteMeasure same = pushforward(W, Eigen::Vector2d::Zero(), nu);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(same.atoms()[j].point, nu.atoms()[j].point);

  const Eigen::Vector2d v(0.3, -1.1);
  const DiscreteMeasure moved = pushforward(W, v, nu);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_EQ(moved.atoms()[j].weight, nu.atoms()[j].weight);
    EXPECT_EQ(moved.atoms()[j].point, act(W, v, nu.atoms()[j].point));
  }
  const DiscreteMeasure d = pushforward(W, v, DiscreteMeasure::dirac(real_point({1, 1, 1})));
  EXPECT_EQ(d.atoms()[0].point, act(W, v, real_point({1, 1, 1})));
}

TEST(MeasureKn, Examples) {
  const WeightSystem W = testsupport::system_from(1, {{0}, {1}});
  const DiscreteMeasure nu = two_atoms(ProjPoint::basis(2, 0), "1/2", ProjPoint::basis(2, 1), "1/2");
  EXPECT_NEAR(measure_kn(W, nu, Eigen::VectorXd::Constant(1, 1.0)), 0.5, 1e-15);
  EXPECT_EQ(measure_kn(W, nu, Eigen::VectorXd::Zero(1)), 0.0);
  const ProjPoint x = real_point({1, 3});
  const Eigen::VectorXd v = Eigen::VectorXd::Constant(1, -0.7);
  EXPECT_EQ(measure_kn(W, DiscreteMeasure::dirac(x), v), kn_value(W, x, v));
}

TEST(MeasureMoment, Examples) {
  const WeightSystem W = testsupport::unit_simplex(2);
  EXPECT_EQ(measure_rational_moment(W, DiscreteMeasure::dirac(ProjPoint::basis(3, 2))), qi({0, 1}));
  EXPECT_EQ(measure_rational_moment(W, two_atoms(ProjPoint::basis(3, 1), "1/2", ProjPoint::basis(3, 2), "1/2")),
            q({"1/2", "1/2"}));
  const DiscreteMeasure nu = two_atoms(real_point({1, 1, 1}), "1/2", ProjPoint::basis(3, 0), "1/2");
  const Eigen::VectorXd phi = measure_moment(W, nu);
  EXPECT_NEAR(phi[0], 1.0 / 6, 1e-15);
  EXPECT_NEAR(phi[1], 1.0 / 6, 1e-15);
  // the exact moment of [1:1:1] is 1/3 only up to the rounding of |z_i|^2
  const RationalVec r = measure_rational_moment(W, nu);
  EXPECT_NEAR(r[0].get_d(), 1.0 / 6, 1e-15);
}

TEST(MeasurePolytope, Examples) {
  const WeightSystem W = testsupport::unit_simplex(2);
  const ProjPoint x = real_point({1, 1, 0});
  EXPECT_EQ(measure_orbit_polytope(W, DiscreteMeasure::dirac(x)), orbit_polytope(W, x));
  const DiscreteMeasure fixed = two_atoms(ProjPoint::basis(3, 1), "1/3", ProjPoint::basis(3, 2), "2/3");
  EXPECT_EQ(measure_orbit_polytope(W, fixed).vertices(), std::vector<RationalVec>{q({"1/3", "2/3"})});
  EXPECT_TRUE(is_fixed(W, fixed));
  EXPECT_FALSE(is_fixed(W, two_atoms(x, "1/2", ProjPoint::basis(3, 0), "1/2")));
}

TEST(MeasurePolytope, MatchesVertexSumOracle) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> na(1, 4), wd(1, 4);
  for (int t = 0; t < 30; ++t) {
    const WeightSystem W = testsupport::random_system(rng, 1 + t % 3, 3 + t % 5);
    const int m = na(rng);
    std::vector<int> raw(static_cast<std::size_t>(m));
    int total = 0;
    for (auto& r : raw) total += (r = wd(rng));
    std::vector<Atom> atoms;
    std::vector<Rational> weights;
    std::vector<std::vector<RationalVec>> vsets;
    for (int j = 0; j < m; ++j) {
      ProjPoint p = random_point(W, testsupport::random_support(rng, W.size()), static_cast<std::uint64_t>(100 * t + j));
      weights.push_back(ratio(raw[static_cast<std::size_t>(j)], total));
      std::vector<RationalVec> ws;
      for (auto i : p.support()) ws.push_back(W.weight(i));
      vsets.push_back(testsupport::brute_force_vertices(ws));
      atoms.push_back({std::move(p), weights.back()});
    }
    const DiscreteMeasure nu(atoms);
    EXPECT_EQ(measure_orbit_polytope(W, nu).vertices(), testsupport::brute_force_minkowski(weights, vsets))
        << "trial " << t;
  }
}

TEST(MeasureStabilizer, IsTheIntersection) {
  const WeightSystem W = testsupport::unit_simplex(3);
  // stabilizers span{(0,1,0),(0,0,1)}... intersected with span{(1,0,0),(0,0,1)} is span{(0,0,1)}
  const DiscreteMeasure nu = two_atoms(real_point({1, 1, 0, 0}), "1/2", real_point({1, 0, 1, 0}), "1/2");
  EXPECT_EQ(measure_stabilizer(W, nu).basis(), RationalMatrix{qi({0, 0, 1})});
}

TEST(MeasureInvert, Examples) {
  const WeightSystem W = testsupport::system_from(1, {{0}, {1}});
  const ProjPoint x = real_point({1, 1});
  const DiscreteMeasure nu = two_atoms(x, "1/2", x, "1/2");
  const InversionResult r = measure_invert(W, nu, q({"3/4"}));
  EXPECT_NEAR(r.v[0], 0.5 * std::log(3.0), 1e-9);
  EXPECT_NEAR(measure_moment_at(W, nu, r.v)[0], 0.75, 1e-9);

  // symmetric measure, symmetric target
  const WeightSystem S = testsupport::system_from(1, {{-1}, {1}});
  const DiscreteMeasure sym = two_atoms(real_point({1, 2}), "1/2", real_point({2, 1}), "1/2");
  EXPECT_LT(measure_invert(S, sym, q({"0"})).v.norm(), 1e-12);

  // single atom agrees with the point inversion
  const WeightSystem T = testsupport::unit_simplex(2);
  const ProjPoint y = random_point(T, testsupport::iota(3), 4);
  const RationalVec target = q({"1/5", "2/5"});
  EXPECT_LT((measure_invert(T, DiscreteMeasure::dirac(y), target).v - invert_moment(T, y, target).v).norm(), 1e-9);
}

TEST(MeasureInvert, RejectsBoundary) {
  const WeightSystem W = testsupport::unit_simplex(2);
  const DiscreteMeasure nu = two_atoms(real_point({1, 1, 1}), "1/2", ProjPoint::basis(3, 0), "1/2");
  EXPECT_THROW(measure_invert(W, nu, q({"1/2", "0"})), TargetNotAttained);
  EXPECT_THROW(measure_invert(W, nu, q({"1/2", "1/2"})), TargetNotAttained);
  EXPECT_NO_THROW(measure_invert(W, nu, q({"1/8", "1/4"})));
}

TEST(MeasureFlow, VertexWitnesses) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const WeightSystem W = testsupport::random_system(rng, 1 + t % 3, 3 + t % 4);
    const DiscreteMeasure nu({Atom{random_point(W, testsupport::random_support(rng, W.size()), 2 * t), ratio(1, 3)},
                              Atom{random_point(W, testsupport::random_support(rng, W.size()), 2 * t + 1),
                                   ratio(2, 3)}});
    const Polytope P = measure_orbit_polytope(W, nu);
    const auto wit = measure_vertex_witnesses(W, nu);
    ASSERT_EQ(wit.size(), P.vertices().size());
    for (const auto& w : wit) {
      EXPECT_TRUE(w.fixed);
      EXPECT_TRUE(w.matches);
      const DiscreteMeasure lim = measure_flow_limit(W, nu, w.beta);
      EXPECT_TRUE(is_fixed(W, lim));
      EXPECT_EQ(measure_rational_moment(W, lim), w.vertex);
    }
  }
}

TEST(MeasureModel, PassesTheAxiomSuite) {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 12; ++t) {
    const WeightSystem W = testsupport::random_system(rng, 1 + t % 3, 3 + t % 5);
    std::vector<Atom> atoms;
    const int m = 1 + t % 4;
    for (int j = 0; j < m; ++j)
      atoms.push_back({random_point(W, testsupport::random_support(rng, W.size()), 10 * t + j), ratio(1, m)});
    const PropertyReport r = check_properties(MeasureModel(W, DiscreteMeasure(atoms)), 100, t);
    EXPECT_TRUE(r.pass()) << "measure " << t;
  }
}

TEST(MeasureGapScale, AtLeastOne) {
  const WeightSystem W = testsupport::system_from(1, {{0}, {1}, {3}});
  const DiscreteMeasure nu = two_atoms(real_point({1, 1, 0}), "1/2", real_point({0, 1, 1}), "1/2");
  EXPECT_EQ(measure_gap_scale(W, nu, qi({1})), 1);
  EXPECT_EQ(measure_gap_scale(W, nu, q({"1/4"})), 4);
}

TEST(MeasureContains, AgreesWithThePolytope) {
  std::mt19937_64 rng(91);
  std::uniform_int_distribution<int> coef(-4, 4);
  int seen[4] = {0, 0, 0, 0};
  for (int t = 0; t < 15; ++t) {
    const WeightSystem W = testsupport::random_system(rng, 1 + t % 3, 3 + t % 5);
    std::vector<Atom> atoms;
    const int m = 1 + t % 3;
    for (int j = 0; j < m; ++j)
      atoms.push_back({random_point(W, testsupport::random_support(rng, W.size()), 40 * t + j), ratio(1, m)});
    const DiscreteMeasure nu(atoms);
    const Polytope P = measure_orbit_polytope(W, nu);
    std::vector<RationalVec> probes = P.vertices();
    probes.push_back(measure_rational_moment(W, nu));
    for (int s = 0; s < 20; ++s) {
      RationalVec p(W.dim_a());
      for (auto& e : p) e = ratio(coef(rng), 4);
      probes.push_back(p);
      // and a point between a vertex and the probe
      probes.push_back(ratio(1, 2) * (p + P.vertices()[static_cast<std::size_t>(s) % P.vertices().size()]));
    }
    for (const auto& p : probes) {
      const Membership expect = contains(P, p);
      ++seen[static_cast<int>(expect)];
      EXPECT_EQ(measure_contains(W, nu, p), expect) << "trial " << t << " probe " << format_rational_vec(p);
    }
  }
  for (int c : seen) EXPECT_GT(c, 0);
}
