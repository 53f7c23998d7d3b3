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

// Randomized search for instances whose optimal one-point extension must
// stretch the Lipschitz constant by a large factor. Every evaluated ratio is a
// lower bound for the one-point extension constant in its (m, n, Q) class.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qvalued/errors.hpp"
#include "qvalued/extend.hpp"
#include "qvalued/lipmap.hpp"

namespace qvalued {

struct SearchParams {
  std::size_t m = 2;
  std::size_t n = 2;
  std::size_t q = 2;
  std::size_t k = 3;
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
};

struct SearchInstance {
  AnchoredMap map;
  Point point;
};

struct SearchImprovement {
  std::size_t iteration = 0;
  double ratio = 0.0;
};

struct SearchReport {
  SearchParams params;
  std::optional<SearchInstance> best;
  double best_ratio = 0.0;
  std::vector<SearchImprovement> history;
  std::size_t evaluations = 0;  // instances whose ratio was computed
  std::size_t resampled = 0;    // degenerate draws, charged to the budget
};

inline constexpr double kRatioCap = 2.0 + 1e-6;
inline constexpr double kMinPointGap = 0.05;
inline constexpr double kInitialSigma = 0.1;
inline constexpr std::size_t kStagnationWindow = 50;
inline constexpr std::size_t kRestartWindow = 100;
inline constexpr double kProgressStep = 1e-6;

/// min stretch at p divided by Lip(f); nullopt when the instance is degenerate
/// (Lip(f) = 0, p too close to an anchor, or coincident anchors).
inline std::optional<double> extension_ratio(const AnchoredMap& map, const Point& p) {
  for (const auto& a : map.anchors()) {
    if (distance(a.x, p) < kMinPointGap) return std::nullopt;
  }
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = i + 1; j < map.size(); ++j)
      if (distance(map[i].x, map[j].x) < tol::kEqual) return std::nullopt;
  const double lip = lip_constant(map);
  if (lip < tol::kEqual) return std::nullopt;
  return solve_one_point(map, p).stretch / lip;
}

namespace detail {

inline Point random_point(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(dim);
  for (double& x : c) x = u(rng);
  return Point(std::move(c));
}

inline Point jitter(const Point& p, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<double> c(p.coords().begin(), p.coords().end());
  for (double& x : c) x += g(rng);
  return Point(std::move(c));
}

// Builds the map without throwing on coincident anchors; those are rejected later.
inline std::optional<SearchInstance> make_instance(const SearchParams& sp, std::vector<Anchor> anchors,
                                                   Point p) {
  try {
    return SearchInstance{AnchoredMap(sp.m, sp.n, sp.q, std::move(anchors)), std::move(p)};
  } catch (const NonLipschitzError&) {
    return std::nullopt;
  }
}

inline std::optional<SearchInstance> sample_instance(const SearchParams& sp, std::mt19937_64& rng) {
  std::vector<Anchor> anchors;
  for (std::size_t i = 0; i < sp.k; ++i) {
    Point x = random_point(sp.m, rng);
    std::vector<Point> atoms;
    for (std::size_t j = 0; j < sp.q; ++j) atoms.push_back(random_point(sp.n, rng));
    anchors.push_back(Anchor{std::move(x), QConfig(std::move(atoms))});
  }
  Point p = random_point(sp.m, rng);
  return make_instance(sp, std::move(anchors), std::move(p));
}

inline std::optional<SearchInstance> perturb_instance(const SearchParams& sp, const SearchInstance& base,
                                                      double sigma, std::mt19937_64& rng) {
  std::vector<Anchor> anchors;
  for (const auto& a : base.map.anchors()) {
    Point x = jitter(a.x, sigma, rng);
    std::vector<Point> atoms;
    for (const auto& atom : a.value.atoms()) atoms.push_back(jitter(atom, sigma, rng));
    anchors.push_back(Anchor{std::move(x), QConfig(std::move(atoms))});
  }
  Point p = jitter(base.point, sigma, rng);
  return make_instance(sp, std::move(anchors), std::move(p));
}

}  // namespace detail

/// Hill-climbs the extension ratio from a random (or given) start.
///
/// Each iteration draws one instance: a fresh uniform sample while no
/// climb is in progress, otherwise a Gaussian perturbation of the climb's
/// incumbent. The step size halves after 50 iterations without improvement
/// and is reset once it drops below 1e-4. A climb with no single gain above
/// 1e-6 in 100 iterations is abandoned and the next draw starts a new one;
/// the report keeps the best instance over all climbs. Degenerate draws
/// consume budget.
inline SearchReport lower_bound_search(const SearchParams& params,
                                       std::optional<SearchInstance> start = std::nullopt) {
  if (params.m == 0 || params.n == 0 || params.q == 0 || params.k == 0 || params.budget == 0) {
    throw std::invalid_argument("search needs m, n, Q, k, budget >= 1");
  }
  if (profile_count(params.q, params.k) > ExtendOptions{}.profile_cap) {
    throw CapacityError("(Q!)^(k-1) matching profiles exceed the exhaustive cap; "
                        "ratios from heuristic extensions are not lower bounds");
  }
  if (start) {
    if (start->map.size() != params.k || start->map.domain_dim() != params.m ||
        start->map.value_dim() != params.n || start->map.q() != params.q ||
        start->point.dim() != params.m) {
      throw DimensionMismatchError("start instance does not match the search parameters");
    }
  }

  SearchReport rep;
  rep.params = params;
  std::mt19937_64 rng(params.seed);
  std::optional<SearchInstance> climb;
  double climb_ratio = 0.0;
  double sigma = kInitialSigma;
  std::size_t stale = 0;
  std::size_t stuck = 0;

  for (std::size_t it = 0; it < params.budget; ++it) {
    std::optional<SearchInstance> cand;
    if (it == 0 && start) {
      cand = start;
    } else if (!climb) {
      cand = detail::sample_instance(params, rng);
    } else {
      cand = detail::perturb_instance(params, *climb, sigma, rng);
    }

    std::optional<double> ratio;
    if (cand) ratio = extension_ratio(cand->map, cand->point);
    if (!ratio) {
      ++rep.resampled;
    } else {
      ++rep.evaluations;
      if (*ratio > kRatioCap) {
        throw std::logic_error("extension ratio " + std::to_string(*ratio) +
                               " exceeds the nearest-point bound 2");
      }
      if (!rep.best || *ratio > rep.best_ratio) {
        rep.best_ratio = *ratio;
        rep.best = cand;
        rep.history.push_back({it, *ratio});
      }
      if (!climb || *ratio > climb_ratio) {
        if (!climb || *ratio > climb_ratio + kProgressStep) stuck = 0;
        climb_ratio = *ratio;
        climb = std::move(cand);
        stale = 0;
      } else if (++stale >= kStagnationWindow) {
        stale = 0;
        sigma /= 2.0;
        if (sigma < 1e-4) sigma = kInitialSigma;
      }
    }
    // Climbs that stop making real progress are abandoned.
    if (climb && ++stuck >= kRestartWindow) {
      climb.reset();
      sigma = kInitialSigma;
      stale = 0;
      stuck = 0;
    }
  }
  return rep;
}

}  // namespace qvalued
