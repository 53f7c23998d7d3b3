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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qvalued/errors.hpp"
#include "qvalued/point.hpp"
#include "qvalued/qspace.hpp"
#include "qvalued/tolerance.hpp"

namespace qvalued {

struct Anchor {
  Point x;
  QConfig value;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// A multi-valued map f : {x_1, ..., x_k} subset R^m -> A_Q(R^n).
///
/// Anchors that coincide (within kEqual) must carry the same value.
class AnchoredMap {
 public:
  AnchoredMap(std::size_t m, std::size_t n, std::size_t q, std::vector<Anchor> anchors = {})
      : m_(m), n_(n), q_(q) {
    if (m == 0 || n == 0 || q == 0) {
      throw DimensionMismatchError("anchored map needs m, n, Q >= 1");
    }
    anchors_.reserve(anchors.size());
    for (auto& a : anchors) append(std::move(a));
  }

  /// Builds a map inferring m, n and Q from the first anchor.
  static AnchoredMap from_anchors(std::vector<Anchor> anchors) {
    if (anchors.empty()) throw DimensionMismatchError("cannot infer dimensions of an empty map");
    const std::size_t m = anchors.front().x.dim();
    const std::size_t n = anchors.front().value.dim();
    const std::size_t q = anchors.front().value.q();
    return AnchoredMap(m, n, q, std::move(anchors));
  }

  std::size_t domain_dim() const noexcept { return m_; }
  std::size_t value_dim() const noexcept { return n_; }
  std::size_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return anchors_.size(); }
  bool empty() const noexcept { return anchors_.empty(); }
  const Anchor& operator[](std::size_t i) const { return anchors_[i]; }
  std::span<const Anchor> anchors() const noexcept { return anchors_; }

  AnchoredMap with_anchor(Point x, QConfig value) const {
    AnchoredMap out = *this;
    out.append(Anchor{std::move(x), std::move(value)});
    return out;
  }

  friend bool operator==(const AnchoredMap&, const AnchoredMap&) = default;

 private:
  void append(Anchor a) {
    const std::string where = "anchor " + std::to_string(anchors_.size());
    if (a.x.dim() != m_) {
      throw DimensionMismatchError(where + ": point has dimension " + std::to_string(a.x.dim()) +
                                   ", expected m = " + std::to_string(m_));
    }
    if (a.value.q() != q_ || a.value.dim() != n_) {
      throw DimensionMismatchError(where + ": value has Q = " + std::to_string(a.value.q()) +
                                   ", n = " + std::to_string(a.value.dim()) + ", expected Q = " +
                                   std::to_string(q_) + ", n = " + std::to_string(n_));
    }
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      if (distance(anchors_[i].x, a.x) < tol::kEqual &&
          g_distance(anchors_[i].value, a.value) > tol::kEqual) {
        throw NonLipschitzError(where + " coincides with anchor " + std::to_string(i) +
                                " but carries a different value");
      }
    }
    anchors_.push_back(std::move(a));
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t q_;
  std::vector<Anchor> anchors_;
};

/// max_{i<j} G(f(x_i), f(x_j)) / |x_i - x_j|; zero for fewer than two anchors.
/// Pairs of coincident anchors (equal values, by construction) are skipped.
inline double lip_constant(const AnchoredMap& map) {
  double best = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = i + 1; j < map.size(); ++j) {
      const double dx = distance(map[i].x, map[j].x);
      const double dv = g_distance(map[i].value, map[j].value);
      if (dx < tol::kEqual) {
        if (dv > tol::kEqual) {
          throw NonLipschitzError("anchors " + std::to_string(i) + " and " + std::to_string(j) +
                                  " coincide with different values");
        }
        continue;
      }
      best = std::max(best, dv / dx);
    }
  }
  return best;
}

inline std::vector<double> anchor_distances(const AnchoredMap& map, const Point& p) {
  std::vector<double> d;
  d.reserve(map.size());
  for (const auto& a : map.anchors()) d.push_back(distance(a.x, p));
  return d;
}

inline void require_off_anchors(const AnchoredMap& map, const Point& p) {
  if (p.dim() != map.domain_dim()) {
    throw DimensionMismatchError("extension point has dimension " + std::to_string(p.dim()) +
                                 ", expected m = " + std::to_string(map.domain_dim()));
  }
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (distance(map[i].x, p) < tol::kEqual) {
      throw CoincidenceError("point coincides with anchor " + std::to_string(i) +
                             "; the extension value is forced there");
    }
  }
}

/// max_i G(t, f(x_i)) / |p - x_i|: the Lipschitz ratio a value t at p creates.
inline double stretch_at(const AnchoredMap& map, const Point& p, const QConfig& t) {
  require_off_anchors(map, p);
  double best = 0.0;
  for (const auto& a : map.anchors()) {
    best = std::max(best, g_distance(t, a.value) / distance(p, a.x));
  }
  return best;
}

}  // namespace qvalued
