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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "qvalued/assignment.hpp"
#include "qvalued/errors.hpp"
#include "qvalued/point.hpp"
#include "qvalued/tolerance.hpp"

namespace qvalued {

/// A pairing of the atoms of two configurations: atom i of the first is
/// matched with atom perm[i] of the second. `cost` is the sum of squared
/// distances along the pairing.
struct Matching {
  std::vector<std::size_t> perm;
  double cost = 0.0;
};

inline QConfig canonicalize(const QConfig& config) {
  // QConfig keeps its atoms sorted; rebuilding re-establishes the order for
  // callers holding a config assembled from an unsorted list.
  return QConfig(std::vector<Point>(config.atoms().begin(), config.atoms().end()));
}

inline void require_compatible(const QConfig& a, const QConfig& b) {
  if (a.q() != b.q() || a.dim() != b.dim()) {
    throw DimensionMismatchError("configurations differ in Q or ambient dimension: (Q=" +
                                 std::to_string(a.q()) + ", n=" + std::to_string(a.dim()) +
                                 ") vs (Q=" + std::to_string(b.q()) +
                                 ", n=" + std::to_string(b.dim()) + ")");
  }
}

inline CostMatrix squared_cost_matrix(const QConfig& a, const QConfig& b) {
  require_compatible(a, b);
  CostMatrix m(a.q());
  for (std::size_t i = 0; i < a.q(); ++i)
    for (std::size_t j = 0; j < b.q(); ++j) m(i, j) = squared_distance(a[i], b[j]);
  return m;
}

inline double matching_cost(const QConfig& a, const QConfig& b, const std::vector<std::size_t>& perm) {
  require_compatible(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.q(); ++i) s += squared_distance(a[i], b[perm[i]]);
  return s;
}

/// G(t1, t2)^2 via the Hungarian method.
inline double g_distance_squared(const QConfig& t1, const QConfig& t2) {
  if (t1.q() == 1) {
    require_compatible(t1, t2);
    return squared_distance(t1[0], t2[0]);
  }
  return solve_assignment(squared_cost_matrix(t1, t2)).cost;
}

inline double g_distance(const QConfig& t1, const QConfig& t2) {
  return std::sqrt(g_distance_squared(t1, t2));
}

inline constexpr std::size_t kBruteForceMaxQ = 8;

/// G(t1, t2) by enumerating all Q! permutations. Reference implementation.
inline double g_distance_bruteforce(const QConfig& t1, const QConfig& t2) {
  require_compatible(t1, t2);
  if (t1.q() > kBruteForceMaxQ) {
    throw SizeLimitError("brute-force distance refuses Q = " + std::to_string(t1.q()) +
                         " (limit " + std::to_string(kBruteForceMaxQ) + ")");
  }
  std::vector<std::size_t> perm(t1.q());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, matching_cost(t1, t2, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best);
}

namespace detail {

// Minimum cost of completing a partial assignment whose first `rows` rows
// are fixed by `prefix`.
inline double completion_cost(const CostMatrix& cost, const std::vector<std::size_t>& prefix) {
  const std::size_t n = cost.size();
  std::vector<char> used(n, 0);
  double fixed = 0.0;
  for (std::size_t r = 0; r < prefix.size(); ++r) {
    used[prefix[r]] = 1;
    fixed += cost(r, prefix[r]);
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!used[c]) free_cols.push_back(c);
  const std::size_t rest = free_cols.size();
  if (rest == 0) return fixed;
  CostMatrix sub(rest);
  for (std::size_t r = 0; r < rest; ++r)
    for (std::size_t c = 0; c < rest; ++c) sub(r, c) = cost(prefix.size() + r, free_cols[c]);
  return fixed + solve_assignment(sub).cost;
}

}  // namespace detail

/// Cost-minimizing pairing of the canonical atoms of t1 with those of t2.
///
/// Among pairings whose cost is within kEqual of the optimum, the
/// lexicographically smallest permutation is returned.
inline Matching optimal_matching(const QConfig& t1, const QConfig& t2) {
  const CostMatrix cost = squared_cost_matrix(t1, t2);
  const std::size_t q = cost.size();
  const double best = solve_assignment(cost).cost;
  const double slack = tol::kEqual * std::max(1.0, best);

  Matching m;
  m.perm.reserve(q);
  std::vector<char> used(q, 0);
  for (std::size_t row = 0; row < q; ++row) {
    bool placed = false;
    for (std::size_t col = 0; col < q && !placed; ++col) {
      if (used[col]) continue;
      m.perm.push_back(col);
      if (detail::completion_cost(cost, m.perm) <= best + slack) {
        used[col] = 1;
        placed = true;
      } else {
        m.perm.pop_back();
      }
    }
    if (!placed) {
      // Rounding pushed every completion past the slack; keep the solver's choice.
      const auto fallback = solve_assignment(cost);
      m.perm = fallback.row_to_col;
      break;
    }
  }
  m.cost = matching_cost(t1, t2, m.perm);
  return m;
}

}  // namespace qvalued
