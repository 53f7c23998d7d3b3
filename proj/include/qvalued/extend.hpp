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

// One-point extensions of an anchored map f at a new point p.
//
// A candidate value T = sum [[y_j]] has stretch max_i G(T, f(x_i)) / d_i with
// d_i = |p - x_i|. Fixing, for every anchor, which atom of f(x_i) each y_j is
// paired with (a matching profile) turns the stretch into
// max_i |y - c_i| / d_i over stacked vectors y, c_i in R^{Qn}: a weighted
// one-center problem. The minimum over all profiles is the optimal stretch.
// Relabeling the atoms of T leaves G unchanged, so the first anchor's pairing
// can be fixed to the identity.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qvalued/errors.hpp"
#include "qvalued/lipmap.hpp"
#include "qvalued/one_center.hpp"
#include "qvalued/qspace.hpp"
#include "qvalued/tolerance.hpp"

namespace qvalued {

enum class ExtensionStatus { kOptimalWithinTolerance, kHeuristic };

inline const char* to_string(ExtensionStatus s) {
  return s == ExtensionStatus::kOptimalWithinTolerance ? "optimal-within-tolerance" : "heuristic";
}

struct ExtensionResult {
  QConfig value;
  double stretch = 0.0;
  std::vector<Matching> profile;  // value atoms -> atoms of each anchor's value
  std::vector<std::size_t> active_anchors;
  ExtensionStatus status = ExtensionStatus::kHeuristic;
  double lower_bound = 0.0;  // certified: no value at p does better
};

struct ExtendOptions {
  double tol = 1e-10;
  std::uint64_t profile_cap = 10080;
  bool allow_heuristic = false;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  std::size_t support_set_max_k = 6;
};

/// (Q!)^(k-1), saturating at UINT64_MAX.
inline std::uint64_t profile_count(std::size_t q, std::size_t k) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= q; ++i) {
    if (fact > kMax / i) return kMax;
    fact *= i;
  }
  std::uint64_t total = 1;
  for (std::size_t i = 1; i < k; ++i) {
    if (fact != 0 && total > kMax / fact) return kMax;
    total *= fact;
  }
  return total;
}

/// max_{i<j} G(f(x_i), f(x_j)) / (d_i + d_j). Valid for every value at p by
/// the triangle inequality.
inline double pairwise_lower_bound(const AnchoredMap& map, const std::vector<double>& d) {
  double best = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = i + 1; j < map.size(); ++j) {
      const double denom = d[i] + d[j];
      if (denom <= 0.0) continue;
      best = std::max(best, g_distance(map[i].value, map[j].value) / denom);
    }
  }
  return best;
}

namespace detail {

using Profile = std::vector<std::vector<std::size_t>>;

inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t q) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> perm(q);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Column i stacks the atoms of f(x_i) in the order prescribed by profile[i].
inline Eigen::MatrixXd stacked_centers(const AnchoredMap& map, const Profile& profile) {
  const std::size_t q = map.q();
  const std::size_t n = map.value_dim();
  Eigen::MatrixXd c(static_cast<Eigen::Index>(q * n), static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const Point& atom = map[i].value[profile[i][j]];
      for (std::size_t t = 0; t < n; ++t) {
        c(static_cast<Eigen::Index>(j * n + t), static_cast<Eigen::Index>(i)) = atom[t];
      }
    }
  }
  return c;
}

inline QConfig unstack(const Eigen::VectorXd& y, std::size_t q, std::size_t n) {
  std::vector<Point> atoms;
  atoms.reserve(q);
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<double> coords(n);
    for (std::size_t t = 0; t < n; ++t) coords[t] = y[static_cast<Eigen::Index>(j * n + t)];
    atoms.emplace_back(std::move(coords));
  }
  return QConfig(std::move(atoms));
}

// Cheap lower bound for a fixed profile: max_{i<j} |c_i - c_j| / (d_i + d_j).
inline double profile_pair_bound(const Eigen::MatrixXd& c, const Eigen::VectorXd& d) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < c.cols(); ++i)
    for (Eigen::Index j = i + 1; j < c.cols(); ++j)
      best = std::max(best, (c.col(i) - c.col(j)).norm() / (d[i] + d[j]));
  return best;
}

// Stretch over anchors not coinciding with p.
inline double stretch_off_coincident(const AnchoredMap& map, const Point& p, const QConfig& t) {
  double best = 0.0;
  for (const auto& a : map.anchors()) {
    const double dx = distance(p, a.x);
    if (dx < tol::kEqual) continue;
    best = std::max(best, g_distance(t, a.value) / dx);
  }
  return best;
}

inline ExtensionResult assemble(const AnchoredMap& map, const Point& p, QConfig value,
                                ExtensionStatus status, double lower_bound) {
  ExtensionResult r{std::move(value), 0.0, {}, {}, status, lower_bound};
  r.stretch = stretch_off_coincident(map, p, r.value);
  r.profile.reserve(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    r.profile.push_back(optimal_matching(r.value, map[i].value));
    const double dx = distance(p, map[i].x);
    const double ratio = dx < tol::kEqual ? 0.0 : std::sqrt(r.profile.back().cost) / dx;
    if (ratio >= r.stretch - tol::kMetricSlack) r.active_anchors.push_back(i);
  }
  return r;
}

inline std::vector<double> checked_distances(const AnchoredMap& map, const Point& p) {
  if (map.empty()) throw std::invalid_argument("extension needs at least one anchor");
  require_off_anchors(map, p);
  return anchor_distances(map, p);
}

}  // namespace detail

/// Copies the value of the nearest anchor; stretch at most 2 Lip(f).
/// Ties go to the lexicographically smallest anchor point.
inline ExtensionResult nearest_point_extension(const AnchoredMap& map, const Point& p) {
  if (map.empty()) throw std::invalid_argument("extension needs at least one anchor");
  if (p.dim() != map.domain_dim()) {
    throw DimensionMismatchError("extension point has dimension " + std::to_string(p.dim()) +
                                 ", expected m = " + std::to_string(map.domain_dim()));
  }
  const std::vector<double> d = anchor_distances(map, p);
  const double dmin = *std::ranges::min_element(d);
  std::size_t pick = map.size();
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (d[i] - dmin > tol::kEqual) continue;
    if (pick == map.size() || lex_less(map[i].x, map[pick].x)) pick = i;
  }
  if (dmin < tol::kEqual) {
    // Forced value: the lower bound is the stretch itself.
    ExtensionResult r = detail::assemble(map, p, map[pick].value, ExtensionStatus::kHeuristic, 0.0);
    r.lower_bound = r.stretch;
    return r;
  }
  return detail::assemble(map, p, map[pick].value, ExtensionStatus::kHeuristic,
                          pairwise_lower_bound(map, d));
}

namespace detail {

struct ProfileSolve {
  Profile profile;
  OneCenterResult center;
};

inline ProfileSolve solve_profile(const AnchoredMap& map, const Eigen::VectorXd& d,
                                  Profile profile, const OneCenterOptions& oc) {
  const Eigen::MatrixXd c = stacked_centers(map, profile);
  return {std::move(profile), solve_one_center(c, d, oc)};
}

// Re-pairs the atoms of the current optimum with each anchor optimally.
inline Profile rematch(const AnchoredMap& map, const Eigen::VectorXd& y) {
  const std::size_t q = map.q();
  const std::size_t n = map.value_dim();
  Profile out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    CostMatrix cost(q);
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t a = 0; a < q; ++a) {
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
          const double diff = y[static_cast<Eigen::Index>(j * n + t)] - map[i].value[a][t];
          s += diff * diff;
        }
        cost(j, a) = s;
      }
    }
    out[i] = solve_assignment(cost).row_to_col;
  }
  return out;
}

inline ProfileSolve local_descent(const AnchoredMap& map, const Eigen::VectorXd& d, Profile start,
                                  const OneCenterOptions& oc) {
  ProfileSolve cur = solve_profile(map, d, std::move(start), oc);
  const std::size_t q = map.q();
  for (int round = 0; round < 1000; ++round) {
    bool improved = false;
    Profile re = rematch(map, cur.center.center);
    if (re != cur.profile) {
      ProfileSolve cand = solve_profile(map, d, std::move(re), oc);
      if (cand.center.value < cur.center.value - 1e-15) {
        cur = std::move(cand);
        continue;
      }
    }
    for (std::size_t i = 1; i < map.size() && !improved; ++i) {
      for (std::size_t a = 0; a < q && !improved; ++a) {
        for (std::size_t b = a + 1; b < q && !improved; ++b) {
          Profile trial = cur.profile;
          std::swap(trial[i][a], trial[i][b]);
          ProfileSolve cand = solve_profile(map, d, std::move(trial), oc);
          if (cand.center.value < cur.center.value - 1e-15) {
            cur = std::move(cand);
            improved = true;
          }
        }
      }
    }
    if (!improved) break;
  }
  return cur;
}

}  // namespace detail

/// Minimizes the stretch at p over all values in A_Q(R^n).
///
/// With at most `profile_cap` matching profiles every profile is solved and
/// the result is optimal to `tol`; `lower_bound` is then the minimum of the
/// per-profile dual certificates. Otherwise, if allowed, a multi-start local
/// search over profiles runs and the result is flagged heuristic.
inline ExtensionResult solve_one_point(const AnchoredMap& map, const Point& p,
                                       const ExtendOptions& opts = {}) {
  const std::vector<double> dist = detail::checked_distances(map, p);
  const std::size_t k = map.size();
  const std::size_t q = map.q();
  const double pair_bound = pairwise_lower_bound(map, dist);
  if (k == 1) {
    return detail::assemble(map, p, map[0].value, ExtensionStatus::kOptimalWithinTolerance, 0.0);
  }

  Eigen::VectorXd d(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) d[static_cast<Eigen::Index>(i)] = dist[i];
  OneCenterOptions oc;
  oc.tol = opts.tol;
  oc.support_set_max_k = opts.support_set_max_k;

  const std::uint64_t count = profile_count(q, k);
  if (count <= opts.profile_cap) {
    const auto perms = detail::all_permutations(q);
    std::vector<std::size_t> digit(k, 0);
    detail::Profile profile(k, perms[0]);
    double best_value = std::numeric_limits<double>::infinity();
    double min_lower = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_y;
    while (true) {
      for (std::size_t i = 1; i < k; ++i) profile[i] = perms[digit[i]];
      const Eigen::MatrixXd c = detail::stacked_centers(map, profile);
      const double quick = detail::profile_pair_bound(c, d);
      if (quick < best_value) {
        const OneCenterResult r = solve_one_center(c, d, oc);
        min_lower = std::min(min_lower, r.lower_bound);
        if (r.value < best_value) {
          best_value = r.value;
          best_y = r.center;
        }
      } else {
        min_lower = std::min(min_lower, quick);
      }
      std::size_t pos = 1;
      while (pos < k && ++digit[pos] == perms.size()) digit[pos++] = 0;
      if (pos == k) break;
    }
    return detail::assemble(map, p, detail::unstack(best_y, q, map.value_dim()),
                            ExtensionStatus::kOptimalWithinTolerance,
                            std::max(pair_bound, min_lower));
  }

  if (!opts.allow_heuristic) {
    throw CapacityError("profile enumeration needs " + std::to_string(count) +
                        " profiles, above the cap of " + std::to_string(opts.profile_cap) +
                        "; enable the heuristic search to proceed");
  }

  const ExtensionResult nearest = nearest_point_extension(map, p);
  detail::Profile start(k);
  for (std::size_t i = 0; i < k; ++i) start[i] = optimal_matching(nearest.value, map[i].value).perm;

  std::mt19937_64 rng(opts.seed);
  std::optional<detail::ProfileSolve> best;
  for (std::size_t restart = 0; restart <= opts.restarts; ++restart) {
    detail::Profile profile = start;
    if (restart > 0) {
      for (std::size_t i = 1; i < k; ++i) std::shuffle(profile[i].begin(), profile[i].end(), rng);
    }
    detail::ProfileSolve cand = detail::local_descent(map, d, std::move(profile), oc);
    if (!best || cand.center.value < best->center.value) best = std::move(cand);
  }
  ExtensionResult r = detail::assemble(map, p, detail::unstack(best->center.center, q, map.value_dim()),
                                       ExtensionStatus::kHeuristic, pair_bound);
  if (nearest.stretch < r.stretch) {
    r = detail::assemble(map, p, nearest.value, ExtensionStatus::kHeuristic, pair_bound);
  }
  return r;
}

struct GridCertificateOptions {
  std::uint64_t max_evals = 1'000'000'000;
  // Any achievable stretch at p; defaults to the nearest-point extension's.
  std::optional<double> upper_bound;
};

struct GridCertificate {
  double lower_bound = 0.0;
  double grid_min = 0.0;     // smallest stretch seen on admissible grid configurations
  double modulus = 0.0;      // sqrt(Q) * (sqrt(n)/2) * h / min_i d_i
  double upper_bound = 0.0;  // stretch bound used to confine the grid
  std::size_t grid_points = 0;
  std::uint64_t evaluations = 0;
};

/// Grid certificate that no value at p has stretch below `lower_bound`.
///
/// Any value with stretch <= U has every atom within U d_i of some atom of
/// f(x_i), for every anchor i. Grid points of step h meeting that condition
/// with an extra (sqrt(n)/2) h margin contain the nearest grid point of every
/// such atom. Stretch is (1 / min d_i)-Lipschitz in G, and each value lies
/// within G-distance sqrt(Q) (sqrt(n)/2) h of a grid configuration, so the
/// grid minimum minus that modulus bounds every value from below.
inline GridCertificate certify_lower_bound(const AnchoredMap& map, const Point& p, double grid_step,
                                           const GridCertificateOptions& opts = {}) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw std::invalid_argument("grid step must be positive and finite");
  }
  const std::vector<double> d = detail::checked_distances(map, p);
  const std::size_t k = map.size();
  const std::size_t q = map.q();
  const std::size_t n = map.value_dim();

  GridCertificate cert;
  cert.upper_bound = opts.upper_bound ? *opts.upper_bound : nearest_point_extension(map, p).stretch;
  if (k == 1 || cert.upper_bound <= 0.0) return cert;  // stretch 0 is achievable

  const double half_diag = std::sqrt(static_cast<double>(n)) / 2.0 * grid_step;
  const double dmin = *std::ranges::min_element(d);
  cert.modulus = std::sqrt(static_cast<double>(q)) * half_diag / dmin;

  std::vector<double> reach(k);
  for (std::size_t i = 0; i < k; ++i) reach[i] = cert.upper_bound * d[i] + half_diag;

  // Bounding box from the anchor with the tightest reach.
  const std::size_t pivot = static_cast<std::size_t>(std::ranges::min_element(reach) - reach.begin());
  std::vector<long long> lo(n), hi(n);
  double box = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (const auto& a : map[pivot].value.atoms()) {
      mn = std::min(mn, a[t] - reach[pivot]);
      mx = std::max(mx, a[t] + reach[pivot]);
    }
    lo[t] = static_cast<long long>(std::floor(mn / grid_step));
    hi[t] = static_cast<long long>(std::ceil(mx / grid_step));
    box *= static_cast<double>(hi[t] - lo[t] + 1);
  }
  if (box > static_cast<double>(opts.max_evals)) {
    throw CapacityError("grid bounding box holds " + std::to_string(box) + " points, above max_evals");
  }

  // Admissible grid points and their squared distances to every atom of every anchor.
  std::vector<double> table;  // [point][anchor][atom]
  std::vector<long long> idx(lo);
  std::vector<double> coord(n);
  while (true) {
    for (std::size_t t = 0; t < n; ++t) coord[t] = static_cast<double>(idx[t]) * grid_step;
    bool admissible = true;
    std::vector<double> row(k * q);
    for (std::size_t i = 0; i < k && admissible; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < q; ++a) {
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
          const double diff = coord[t] - map[i].value[a][t];
          s += diff * diff;
        }
        row[i * q + a] = s;
        nearest = std::min(nearest, s);
      }
      admissible = nearest <= reach[i] * reach[i];
    }
    if (admissible) table.insert(table.end(), row.begin(), row.end());
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (++idx[t] <= hi[t]) break;
      idx[t] = lo[t];
    }
    if (t == n) break;
  }
  const std::size_t npts = table.size() / (k * q);
  cert.grid_points = npts;

  // Multisets of q grid points: C(npts + q - 1, q).
  double combos = 1.0;
  for (std::size_t j = 0; j < q; ++j) {
    combos *= static_cast<double>(npts + j) / static_cast<double>(j + 1);
  }
  if (combos > static_cast<double>(opts.max_evals)) {
    throw CapacityError("grid certificate needs " + std::to_string(combos) +
                        " evaluations, above max_evals = " + std::to_string(opts.max_evals));
  }

  const auto perms = detail::all_permutations(q);
  std::vector<double> inv_d2(k);
  for (std::size_t i = 0; i < k; ++i) inv_d2[i] = 1.0 / (d[i] * d[i]);
  // Start from the known upper bound so configurations can be abandoned early.
  double best = cert.upper_bound * cert.upper_bound;
  std::uint64_t evals = 0;
  std::vector<std::size_t> pick(q, 0);
  if (npts > 0) {
    while (true) {
      ++evals;
      double worst = 0.0;
      for (std::size_t i = 0; i < k && worst < best; ++i) {
        double g2 = std::numeric_limits<double>::infinity();
        for (const auto& perm : perms) {
          double s = 0.0;
          for (std::size_t j = 0; j < q; ++j) s += table[(pick[j] * k + i) * q + perm[j]];
          g2 = std::min(g2, s);
        }
        worst = std::max(worst, g2 * inv_d2[i]);
      }
      best = std::min(best, worst);
      // Next nondecreasing index tuple.
      std::size_t j = q;
      while (j > 0 && pick[j - 1] == npts - 1) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t t = j; t < q; ++t) pick[t] = pick[j - 1];
    }
  }
  cert.evaluations = evals;
  cert.grid_min = std::sqrt(best);
  cert.lower_bound = std::max(0.0, cert.grid_min - cert.modulus);
  return cert;
}

inline double certified_lower_bound(const AnchoredMap& map, const Point& p, double grid_step,
                                    const GridCertificateOptions& opts = {}) {
  return certify_lower_bound(map, p, grid_step, opts).lower_bound;
}

}  // namespace qvalued
