#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tconv/errors.hpp"
#include "tconv/hull.hpp"
#include "tconv/lp.hpp"

using namespace tconv;
using testsupport::q;
using testsupport::qi;

// ---- rationals -------------------------------------------------------------

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), ratio(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(format_rational(Rational(2)), "2/1");
  EXPECT_EQ(format_rational(ratio(-3, 9)), "-1/3");
  EXPECT_EQ(format_rational_vec(q({"1/2", "0"})), "(1/2, 0/1)");
  EXPECT_EQ(parse_rational_vec("1/2, -3"), q({"1/2", "-3"}));
}

TEST(Rational, RejectsMalformed) {
  for (const char* bad : {"", "1.5", "1/0", "a", "1//2", "/3", "1/", "+-2"}) {
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
  }
}

TEST(Rational, ExactConversionOfDoubles) {
  EXPECT_EQ(exact_rational(0.5), ratio(1, 2));
  EXPECT_EQ(exact_rational(0.1).get_d(), 0.1);
  EXPECT_THROW(exact_rational(std::nan("")), InputError);
}

TEST(Rational, RowEchelonIsCanonical) {
  const RowEchelon a = row_echelon({qi({2, 4}), qi({1, 2})}, 2);
  EXPECT_EQ(a.rank(), 1u);
  EXPECT_EQ(a.rows, RationalMatrix{qi({1, 2})});
  const RowEchelon b = row_echelon({qi({3, 6})}, 2);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_TRUE(a.spans(qi({-1, -2})));
  EXPECT_FALSE(a.spans(qi({1, 0})));
  const auto ker = a.kernel();
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(dot(ker[0], qi({1, 2})), 0);
}

// ---- LP --------------------------------------------------------------------

TEST(Lp, SolvesSmallProgram) {
  // max x + y  s.t.  x + 2y + s1 = 4, 3x + y + s2 = 6
  const auto r = solve_lp({qi({1, 2, 1, 0}), qi({3, 1, 0, 1})}, qi({4, 6}), qi({1, 1, 0, 0}));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.objective, ratio(14, 5));
  EXPECT_EQ(r.x[0], ratio(8, 5));
  EXPECT_EQ(r.x[1], ratio(6, 5));
}

TEST(Lp, DetectsInfeasibleAndUnbounded) {
  EXPECT_EQ(solve_lp({qi({1, 1})}, qi({-1}), qi({0, 0})).status, LpStatus::Infeasible);
  EXPECT_EQ(solve_lp({qi({1, -1})}, qi({0}), qi({1, 0})).status, LpStatus::Unbounded);
}

TEST(Lp, ToleratesRedundantRows) {
  const auto r = solve_lp({qi({1, 1}), qi({2, 2})}, qi({1, 2}), qi({1, 0}));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.objective, 1);
}

// ---- convex_hull -----------------------------------------------------------

TEST(Hull, SquareWithEdgePoint) {
  const Polytope P = convex_hull({qi({0, 0}), qi({2, 0}), qi({0, 2}), qi({1, 1})});
  const std::vector<RationalVec> expected{qi({0, 0}), qi({0, 2}), qi({2, 0})};
  EXPECT_EQ(P.vertices(), expected);
  EXPECT_EQ(P.vertices(), testsupport::brute_force_vertices({qi({0, 0}), qi({2, 0}), qi({0, 2}), qi({1, 1})}));
  EXPECT_EQ(P.dim(), 2u);
}

TEST(Hull, Singleton) {
  const Polytope P = convex_hull({qi({5, 7})});
  EXPECT_EQ(P.vertices(), std::vector<RationalVec>{qi({5, 7})});
  EXPECT_EQ(P.dim(), 0u);
  EXPECT_EQ(P.ambient_dim(), 2u);
}

TEST(Hull, Interval) {
  const Polytope P = convex_hull({q({"0"}), q({"1"}), q({"1/2"})});
  const std::vector<RationalVec> expected{q({"0"}), q({"1"})};
  EXPECT_EQ(P.vertices(), expected);
  EXPECT_EQ(P.dim(), 1u);
}

TEST(Hull, RejectsBadInput) {
  EXPECT_THROW(convex_hull({}), InputError);
  EXPECT_THROW(convex_hull({qi({0, 0}), qi({1})}), InputError);
}

TEST(Hull, DegenerateInHigherAmbient) {
  // A triangle inside a plane of R^3.
  const Polytope P = convex_hull({qi({0, 0, 1}), qi({1, 0, 1}), qi({0, 1, 1}), q({"1/3", "1/3", "1"})});
  EXPECT_EQ(P.vertices().size(), 3u);
  EXPECT_EQ(P.dim(), 2u);
  EXPECT_EQ(P.ambient_dim(), 3u);
  EXPECT_TRUE(P.in_affine_hull(qi({5, -3, 1})));
  EXPECT_FALSE(P.in_affine_hull(qi({0, 0, 0})));
}

TEST(Hull, MatchesBruteForceOnRandomSets) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-3, 3), npts(1, 12), kd(1, 3);
  for (int t = 0; t < 60; ++t) {
    const auto k = static_cast<std::size_t>(kd(rng));
    std::vector<RationalVec> pts(static_cast<std::size_t>(npts(rng)), RationalVec(k));
    for (auto& p : pts)
      for (auto& e : p) e = Rational(c(rng));
    const Polytope P = convex_hull(pts);
    EXPECT_EQ(P.vertices(), testsupport::brute_force_vertices(pts)) << "trial " << t;
    EXPECT_EQ(convex_hull(P.vertices()), P);
  }
}

// ---- contains --------------------------------------------------------------

TEST(Contains, SimplexCases) {
  const Polytope P = convex_hull({qi({0, 0}), qi({1, 0}), qi({0, 1})});
  EXPECT_EQ(contains(P, q({"1/3", "1/3"})), Membership::Interior);
  EXPECT_EQ(contains(P, q({"1/2", "1/2"})), Membership::Boundary);
  EXPECT_EQ(contains(P, qi({1, 1})), Membership::Outside);
  EXPECT_EQ(contains(P, qi({0, 0})), Membership::Boundary);
}

TEST(Contains, RelativeInteriorOfLowerDimensionalPolytope) {
  const Polytope seg = convex_hull({qi({0, 0}), qi({2, 0})});
  EXPECT_EQ(contains(seg, qi({1, 0})), Membership::Interior);
  EXPECT_EQ(contains(seg, qi({2, 0})), Membership::Boundary);
  EXPECT_EQ(contains(seg, qi({3, 0})), Membership::Outside);
  EXPECT_EQ(contains(seg, qi({1, 1})), Membership::OffAffineHull);
  const Polytope pt = convex_hull({qi({1, 1})});
  EXPECT_EQ(contains(pt, qi({1, 1})), Membership::Interior);
}

TEST(Contains, InteriorCertificateReproducesPoint) {
  const Polytope P = convex_hull({qi({0, 0}), qi({4, 0}), qi({0, 4}), qi({4, 4})});
  const RationalVec target = q({"1", "5/2"});
  const auto lambda = interior_certificate(P, target);
  ASSERT_TRUE(lambda.has_value());
  RationalVec sum = zeros(2);
  Rational total(0);
  for (std::size_t j = 0; j < lambda->size(); ++j) {
    EXPECT_GT((*lambda)[j], 0);
    sum = sum + (*lambda)[j] * P.vertices()[j];
    total += (*lambda)[j];
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(sum, target);
  EXPECT_FALSE(interior_certificate(P, qi({4, 2})).has_value());
}

// ---- faces -----------------------------------------------------------------

TEST(Faces, ExposedFaceExamples) {
  const Polytope P = convex_hull({qi({0, 0}), qi({1, 0}), qi({0, 1})});
  // vertices sorted: (0,0), (0,1), (1,0)
  EXPECT_EQ(exposed_face(P, qi({1, 0})).vertex_indices, (std::vector<std::size_t>{2}));
  EXPECT_EQ(exposed_face(P, qi({1, 1})).vertex_indices, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(exposed_face(P, qi({0, 0})).vertex_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(support_function(P, qi({1, 1})), 1);
  EXPECT_EQ(support_function(P, qi({-1, -2})), 0);
}

TEST(Faces, CubeFaceLattice) {
  std::vector<RationalVec> cube;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) cube.push_back(qi({a, b, c}));
  const Polytope P = convex_hull(cube);
  const auto fs = proper_faces(P);
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& f : fs) {
    const Polytope F = face_polytope(P, f);
    ++counts[F.dim()];
    // the selector really exposes this face
    EXPECT_EQ(exposed_face(P, f.selector).vertex_indices, f.vertex_indices);
  }
  EXPECT_EQ(counts[0], 8u);
  EXPECT_EQ(counts[1], 12u);
  EXPECT_EQ(counts[2], 6u);
  EXPECT_EQ(facets(P).size(), 6u);
}

TEST(Faces, FacetNormalsLieInDirectionSpace) {
  const Polytope P = convex_hull({qi({0, 0, 1}), qi({1, 0, 1}), qi({0, 1, 1})});
  const auto fs = facets(P);
  EXPECT_EQ(fs.size(), 3u);
  for (const auto& f : fs) {
    EXPECT_TRUE(P.direction_space().spans(f.selector));
    EXPECT_EQ(f.vertex_indices.size(), 2u);
  }
}

TEST(Faces, SegmentAndPointHaveExpectedFaces) {
  const Polytope seg = convex_hull({qi({0, 0}), qi({1, 1})});
  EXPECT_EQ(proper_faces(seg).size(), 2u);
  EXPECT_TRUE(proper_faces(convex_hull({qi({3, 3})})).empty());
}

// ---- Minkowski sums --------------------------------------------------------

TEST(Minkowski, Intervals) {
  const Polytope a = convex_hull({q({"0"}), q({"1"})});
  const Polytope b = convex_hull({q({"0"}), q({"2"})});
  const Polytope S = minkowski_sum({{ratio(1, 2), a}, {ratio(1, 2), b}});
  const std::vector<RationalVec> expected{q({"0"}), q({"3/2"})};
  EXPECT_EQ(S.vertices(), expected);
}

TEST(Minkowski, TranslationByPoint) {
  const Polytope P = convex_hull({qi({0, 0}), qi({1, 0}), qi({0, 1})});
  const Polytope S = minkowski_sum({{Rational(1), P}, {Rational(1), convex_hull({qi({2, -1})})}});
  const std::vector<RationalVec> expected{qi({2, -1}), qi({2, 0}), qi({3, -1})};
  EXPECT_EQ(S.vertices(), expected);
}

TEST(Minkowski, TwoSegmentsMakeASquare) {
  const Polytope a = convex_hull({qi({0, 0}), qi({1, 0})});
  const Polytope b = convex_hull({qi({0, 0}), qi({0, 1})});
  const Polytope S = minkowski_sum({{ratio(1, 2), a}, {ratio(1, 2), b}});
  const std::vector<RationalVec> expected{q({"0", "0"}), q({"0", "1/2"}), q({"1/2", "0"}), q({"1/2", "1/2"})};
  EXPECT_EQ(S.vertices(), expected);
}

TEST(Minkowski, MatchesVertexSumEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-2, 2), npts(1, 4), nterms(1, 4), w(1, 3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(t % 3);
    std::vector<WeightedPolytope> terms;
    std::vector<Rational> weights;
    std::vector<std::vector<RationalVec>> vsets;
    const int m = nterms(rng);
    for (int j = 0; j < m; ++j) {
      std::vector<RationalVec> pts(static_cast<std::size_t>(npts(rng)), RationalVec(k));
      for (auto& p : pts)
        for (auto& e : p) e = Rational(c(rng));
      const Rational wt = ratio(w(rng), 4);
      terms.push_back({wt, convex_hull(pts)});
      weights.push_back(wt);
      vsets.push_back(terms.back().polytope.vertices());
    }
    const Polytope S = minkowski_sum(terms);
    EXPECT_EQ(S.vertices(), testsupport::brute_force_minkowski(weights, vsets)) << "trial " << t;
    // support functions add
    for (int d = 0; d < 5; ++d) {
      RationalVec beta(k);
      for (auto& e : beta) e = Rational(c(rng));
      Rational sum(0);
      for (const auto& term : terms) sum += term.weight * support_function(term.polytope, beta);
      EXPECT_EQ(support_function(S, beta), sum);
    }
  }
}

TEST(Minkowski, RejectsBadTerms) {
  const Polytope a = convex_hull({qi({0})});
  EXPECT_THROW(minkowski_sum({}), InputError);
  EXPECT_THROW(minkowski_sum({{Rational(0), a}}), InputError);
  EXPECT_THROW(minkowski_sum({{Rational(1), a}, {Rational(1), convex_hull({qi({0, 0})})}}), InputError);
}
