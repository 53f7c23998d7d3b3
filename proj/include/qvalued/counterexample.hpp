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

#pragma once

// The planar instance on which no one-point extension keeps the Lipschitz
// constant: three anchors on the unit circle, each carrying a pair of
// antipodal vertices of a regular unit hexagon.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvalued/extend.hpp"
#include "qvalued/lipmap.hpp"
#include "qvalued/qspace.hpp"

namespace qvalued {

/// Vertices of the regular unit hexagon, clockwise from (0, 1): element j is
/// P_{j+1}, so P_1 = (0, 1), P_2 = (s, 1/2), ..., P_6 = (-s, 1/2), s = sqrt(3)/2.
inline std::array<Point, 6> hexagon_vertices() {
  const double s = std::sqrt(3.0) / 2.0;
  return {Point{0.0, 1.0}, Point{s, 0.5},   Point{s, -0.5},
          Point{0.0, -1.0}, Point{-s, -0.5}, Point{-s, 0.5}};
}

/// f(A) = [[P1]] + [[P4]], f(B) = [[P2]] + [[P5]], f(C) = [[P3]] + [[P6]].
inline AnchoredMap hexagon_instance() {
  const double s = std::sqrt(3.0) / 2.0;
  const auto v = hexagon_vertices();
  return AnchoredMap(2, 2, 2,
                     {Anchor{Point{0.0, 1.0}, QConfig{v[0], v[3]}},
                      Anchor{Point{-s, -0.5}, QConfig{v[1], v[4]}},
                      Anchor{Point{s, -0.5}, QConfig{v[2], v[5]}}});
}

/// Rotates every anchor point and every atom by `angle` radians about the origin.
inline AnchoredMap rotated(const AnchoredMap& map, double angle) {
  if (map.domain_dim() != 2 || map.value_dim() != 2) {
    throw DimensionMismatchError("rotation is defined for planar instances only");
  }
  const double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](const Point& p) { return Point{c * p[0] - s * p[1], s * p[0] + c * p[1]}; };
  std::vector<Anchor> anchors;
  for (const auto& a : map.anchors()) {
    std::vector<Point> atoms;
    for (const auto& atom : a.value.atoms()) atoms.push_back(rot(atom));
    anchors.push_back(Anchor{rot(a.x), QConfig(std::move(atoms))});
  }
  return AnchoredMap(2, 2, map.q(), std::move(anchors));
}

struct Claim {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct HexagonReport {
  std::array<double, 3> domain_distances{};  // |A-B|, |A-C|, |B-C|
  std::array<double, 3> value_distances{};   // G(f(A),f(B)), G(f(A),f(C)), G(f(B),f(C))
  double lip_f = 0.0;
  double min_stretch_lb = 0.0;
  double min_stretch_found = 0.0;
  double constant_ratio = 0.0;
  double grid_step = 0.0;
  double grid_modulus = 0.0;
  std::vector<Claim> claims;

  bool verdict() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return !claims.empty();
  }
};

/// Checks every numerical claim about a three-anchor planar instance at the
/// origin: equilateral domain distances sqrt(3), equal value distances
/// sqrt(2), Lipschitz constant sqrt(2/3), and that no value at the origin
/// reaches stretch below 1 (certified on a grid and by the profile optimizer).
inline HexagonReport verify_counterexample(const AnchoredMap& map, double tol, double grid_step = 0.02,
                                           const GridCertificateOptions& grid_opts = {}) {
  if (!(tol > 0.0) || tol > 1e-3) throw std::invalid_argument("verification tolerance must lie in (0, 1e-3]");
  if (map.size() != 3 || map.domain_dim() != 2) {
    throw DimensionMismatchError("verification expects a planar three-anchor instance");
  }
  constexpr double kExact = 1e-12;
  const double sqrt3 = std::sqrt(3.0);
  const double sqrt2 = std::sqrt(2.0);
  const double lip_target = std::sqrt(2.0 / 3.0);
  const double ratio_target = std::sqrt(1.5);
  const char* pair_names[3] = {"A-B", "A-C", "B-C"};
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};

  HexagonReport rep;
  rep.grid_step = grid_step;
  for (int i = 0; i < 3; ++i) {
    const auto& a = map[pairs[i][0]];
    const auto& b = map[pairs[i][1]];
    rep.domain_distances[i] = distance(a.x, b.x);
    rep.value_distances[i] = g_distance(a.value, b.value);
    rep.claims.push_back({std::string("domain distance |") + pair_names[i] + "|", rep.domain_distances[i],
                          sqrt3, kExact, std::abs(rep.domain_distances[i] - sqrt3) <= kExact});
  }
  for (int i = 0; i < 3; ++i) {
    rep.claims.push_back({std::string("value distance G(") + pair_names[i] + ")", rep.value_distances[i],
                          sqrt2, kExact, std::abs(rep.value_distances[i] - sqrt2) <= kExact});
  }
  rep.lip_f = lip_constant(map);
  rep.claims.push_back({"Lip(f)", rep.lip_f, lip_target, kExact, std::abs(rep.lip_f - lip_target) <= kExact});

  const Point origin = Point::origin(2);
  const GridCertificate cert = certify_lower_bound(map, origin, grid_step, grid_opts);
  rep.min_stretch_lb = cert.lower_bound;
  rep.grid_modulus = cert.modulus;
  rep.claims.push_back({"certified lower bound at origin", rep.min_stretch_lb, 1.0, tol,
                        rep.min_stretch_lb >= 1.0 - tol});

  const ExtensionResult ext = solve_one_point(map, origin);
  rep.min_stretch_found = ext.stretch;
  rep.claims.push_back({"optimal stretch at origin", ext.stretch, 1.0, tol, ext.stretch >= 1.0 - tol});

  if (rep.lip_f > 0.0) {
    rep.constant_ratio = ext.stretch / rep.lip_f;
  } else {
    rep.constant_ratio = ext.stretch > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  rep.claims.push_back({"extension constant ratio", rep.constant_ratio, ratio_target, tol,
                        rep.constant_ratio >= ratio_target - tol});
  return rep;
}

inline HexagonReport verify_counterexample(double tol, double grid_step = 0.02) {
  return verify_counterexample(hexagon_instance(), tol, grid_step);
}

/// Random values with both atoms in {y <= 0} stay at G-distance >= 1 from f(A).
inline bool half_plane_check(std::size_t samples, std::uint64_t seed = 0) {
  if (samples == 0) throw std::invalid_argument("half_plane_check needs samples >= 1");
  const auto v = hexagon_vertices();
  const QConfig fa{v[0], v[3]};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xs(-3.0, 3.0), ys(-3.0, 0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    const QConfig t{Point{xs(rng), ys(rng)}, Point{xs(rng), ys(rng)}};
    if (g_distance(t, fa) < 1.0 - 1e-12) return false;
  }
  return true;
}

/// With S1 in the closed sector around P1 intersected with the first quadrant
/// (polar angle in [60, 90] degrees) and S2 in the opposite sector ([240, 300]),
/// |S1 - P6|^2 + |S2 - P3|^2 >= 1. Radii are drawn from [0, 3].
inline bool sector_check(std::size_t samples, std::uint64_t seed = 0) {
  if (samples == 0) throw std::invalid_argument("sector_check needs samples >= 1");
  const auto v = hexagon_vertices();
  constexpr double deg = std::numbers::pi / 180.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 3.0), a1(60.0 * deg, 90.0 * deg),
      a2(240.0 * deg, 300.0 * deg);
  auto polar = [](double r, double t) { return Point{r * std::cos(t), r * std::sin(t)}; };
  for (std::size_t s = 0; s < samples; ++s) {
    const Point s1 = polar(radius(rng), a1(rng));
    const Point s2 = polar(radius(rng), a2(rng));
    if (squared_distance(s1, v[5]) + squared_distance(s2, v[2]) < 1.0 - 1e-12) return false;
  }
  return true;
}

}  // namespace qvalued
