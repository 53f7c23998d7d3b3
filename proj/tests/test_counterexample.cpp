/*
 * Copyright 2026 The qvalued Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qvalued/counterexample.hpp"

using namespace qvalued;

TEST(Hexagon, VerticesAreUnitAndAntipodal) {
  const auto v = hexagon_vertices();
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(norm(v[i]), 1.0, 1e-15);
    EXPECT_NEAR(distance(v[i], v[(i + 1) % 6]), 1.0, 1e-15);
  }
  EXPECT_EQ(v[3], (Point{0.0, -1.0}));
  EXPECT_NEAR(norm(v[0] + v[3]), 0.0, 1e-15);
}

TEST(Hexagon, DistancesAndLipschitzConstant) {
  const AnchoredMap map = hexagon_instance();
  const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  EXPECT_NEAR(distance(map[0].x, map[1].x), s3, 1e-12);
  EXPECT_NEAR(distance(map[0].x, map[2].x), s3, 1e-12);
  EXPECT_NEAR(distance(map[1].x, map[2].x), s3, 1e-12);
  EXPECT_NEAR(g_distance(map[0].value, map[1].value), s2, 1e-12);
  EXPECT_NEAR(g_distance(map[0].value, map[2].value), s2, 1e-12);
  EXPECT_NEAR(g_distance(map[1].value, map[2].value), s2, 1e-12);
  EXPECT_NEAR(lip_constant(map), 0.8164965809277260, 1e-12);
}

TEST(Verify, HexagonPassesAtLooseAndTightTolerance) {
  for (double tol : {1e-3, 1e-6}) {
    const HexagonReport rep = verify_counterexample(tol);
    EXPECT_TRUE(rep.verdict()) << "tol " << tol;
    EXPECT_EQ(rep.claims.size(), 10u);
    EXPECT_GE(rep.min_stretch_lb, 0.999);
    EXPECT_NEAR(rep.min_stretch_found, std::sqrt(1.5), 1e-9);
    EXPECT_NEAR(rep.constant_ratio, 1.5, 1e-9);
  }
}

TEST(Verify, RejectsBadToleranceAndShape) {
  EXPECT_THROW(verify_counterexample(0.0), std::invalid_argument);
  EXPECT_THROW(verify_counterexample(0.01), std::invalid_argument);
  const AnchoredMap two = AnchoredMap(2, 2, 2)
                              .with_anchor(Point{0.0, 1.0}, QConfig{Point{0.0, 0.0}, Point{1.0, 0.0}})
                              .with_anchor(Point{0.0, -1.0}, QConfig{Point{0.0, 0.0}, Point{1.0, 0.0}});
  EXPECT_THROW(verify_counterexample(two, 1e-3), DimensionMismatchError);
}

TEST(Verify, ConstantMapFailsTheStretchClaims) {
  const AnchoredMap hex = hexagon_instance();
  const QConfig c{Point{0.0, 1.0}, Point{0.0, -1.0}};
  AnchoredMap flat(2, 2, 2);
  for (const auto& a : hex.anchors()) flat = flat.with_anchor(a.x, c);
  const HexagonReport rep = verify_counterexample(flat, 1e-3, 0.05);
  EXPECT_FALSE(rep.verdict());
  EXPECT_EQ(rep.lip_f, 0.0);
  EXPECT_EQ(rep.min_stretch_found, 0.0);
  int failed = 0;
  for (const auto& claim : rep.claims) failed += claim.pass ? 0 : 1;
  EXPECT_GE(failed, 4);
}

TEST(Verify, RotatedHexagonStillPasses) {
  const AnchoredMap map = rotated(hexagon_instance(), 2.0 * std::numbers::pi / 3.0);
  EXPECT_TRUE(verify_counterexample(map, 1e-3, 0.05).verdict());
}

TEST(Verify, Deterministic) {
  const HexagonReport a = verify_counterexample(1e-3, 0.05);
  const HexagonReport b = verify_counterexample(1e-3, 0.05);
  ASSERT_EQ(a.claims.size(), b.claims.size());
  for (std::size_t i = 0; i < a.claims.size(); ++i) EXPECT_EQ(a.claims[i].value, b.claims[i].value);
}

TEST(Rotation, SymmetryPermutesAnchors) {
  // A 120 degree turn of domain and codomain permutes the anchors together with their values.
  const AnchoredMap map = hexagon_instance();
  const AnchoredMap rot = rotated(map, 2.0 * std::numbers::pi / 3.0);
  for (const auto& a : rot.anchors()) {
    bool found = false;
    for (const auto& b : map.anchors()) {
      if (distance(a.x, b.x) < 1e-12) {
        found = true;
        EXPECT_NEAR(g_distance(a.value, b.value), 0.0, 1e-12);
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(HalfPlane, WorkedExamples) {
  const QConfig fa{Point{0.0, 1.0}, Point{0.0, -1.0}};
  EXPECT_NEAR(g_distance(QConfig{Point{0.0, 0.0}, Point{0.0, 0.0}}, fa), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(g_distance(QConfig{Point{0.0, 0.0}, Point{0.0, -1.0}}, fa), 1.0, 1e-12);
}

TEST(HalfPlane, RandomSamplesStayAtDistanceOne) {
  EXPECT_TRUE(half_plane_check(10000, 1));
  EXPECT_TRUE(half_plane_check(10000, 2));
  EXPECT_THROW(half_plane_check(0), std::invalid_argument);
}

TEST(Sector, RandomSamplesAndBoundaryRays) {
  EXPECT_TRUE(sector_check(10000, 3));
  const auto v = hexagon_vertices();
  constexpr double deg = std::numbers::pi / 180.0;
  for (double t1 : {60.0, 90.0}) {
    for (double t2 : {240.0, 300.0}) {
      for (double r1 : {0.0, 0.5, 1.0, 3.0}) {
        for (double r2 : {0.0, 0.5, 1.0, 3.0}) {
          const Point s1{r1 * std::cos(t1 * deg), r1 * std::sin(t1 * deg)};
          const Point s2{r2 * std::cos(t2 * deg), r2 * std::sin(t2 * deg)};
          EXPECT_GE(squared_distance(s1, v[5]) + squared_distance(s2, v[2]), 1.0 - 1e-12);
        }
      }
    }
  }
}
