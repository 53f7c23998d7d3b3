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

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace qvalued {

/// Dense square cost matrix, row-major.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  CostMatrix transposed() const {
    CostMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::size_t> row_to_col;
  double cost = 0.0;
};

/// Minimum-cost perfect matching (Hungarian method with potentials, O(n^3)).
///
/// The returned cost is re-summed from the matrix entries along the
/// assignment rather than read off the dual potentials.
inline Assignment solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  Assignment out;
  if (n == 0) return out;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based with a virtual column 0, following the classical formulation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) throw std::domain_error("assignment: non-finite cost entry");
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  out.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.row_to_col[match[j] - 1] = j - 1;
  for (std::size_t r = 0; r < n; ++r) out.cost += cost(r, out.row_to_col[r]);
  return out;
}

}  // namespace qvalued
