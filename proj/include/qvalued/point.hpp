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
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qvalued/errors.hpp"

namespace qvalued {

/// A point of R^d with finite coordinates.
class Point {
 public:
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
      throw DimensionMismatchError("point must have dimension >= 1");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("point coordinates must be finite");
      }
    }
  }

  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  static Point origin(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

  friend bool lex_less(const Point& a, const Point& b) {
    return std::ranges::lexicographical_compare(a.coords_, b.coords_);
  }

  friend Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] + b.coords_[i];
    return Point(std::move(out));
  }

  friend Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] - b.coords_[i];
    return Point(std::move(out));
  }

  friend Point operator*(double s, const Point& a) {
    std::vector<double> out(a.coords_);
    for (double& c : out) c *= s;
    return Point(std::move(out));
  }

  static void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
      throw DimensionMismatchError("point dimensions differ: " + std::to_string(a.dim()) +
                                   " vs " + std::to_string(b.dim()));
    }
  }

 private:
  std::vector<double> coords_;
};

inline double squared_distance(const Point& a, const Point& b) {
  Point::require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

inline double norm(const Point& a) {
  double s = 0.0;
  for (double c : a.coords()) s += c * c;
  return std::sqrt(s);
}

/// An element of A_Q(R^n): an unordered multiset of Q atoms.
///
/// Atoms are always held in lexicographic order, so two configurations are
/// equal exactly when their stored atom lists are equal. Repeated atoms are
/// kept as-is.
class QConfig {
 public:
  explicit QConfig(std::vector<Point> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
      throw DimensionMismatchError("configuration must have Q >= 1 atoms");
    }
    const std::size_t n = atoms_.front().dim();
    for (const auto& a : atoms_) {
      if (a.dim() != n) {
        throw DimensionMismatchError("configuration atoms have mixed dimensions");
      }
    }
    std::ranges::sort(atoms_, [](const Point& a, const Point& b) { return lex_less(a, b); });
  }

  QConfig(std::initializer_list<Point> atoms) : QConfig(std::vector<Point>(atoms)) {}

  std::size_t q() const noexcept { return atoms_.size(); }
  std::size_t dim() const noexcept { return atoms_.front().dim(); }
  std::span<const Point> atoms() const noexcept { return atoms_; }
  const Point& operator[](std::size_t i) const { return atoms_[i]; }

  friend bool operator==(const QConfig&, const QConfig&) = default;

 private:
  std::vector<Point> atoms_;
};

/// Coordinatewise comparison of the canonical atom lists.
inline bool approx_equal(const QConfig& a, const QConfig& b, double tol) {
  if (a.q() != b.q() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.q(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (std::abs(a[i][j] - b[i][j]) > tol) return false;
    }
  }
  return true;
}

/// Applies an affine map `atom -> scale * atom + shift` to every atom.
inline QConfig transformed(const QConfig& t, double scale, const Point& shift) {
  std::vector<Point> atoms;
  atoms.reserve(t.q());
  for (const auto& a : t.atoms()) atoms.push_back(scale * a + shift);
  return QConfig(std::move(atoms));
}

}  // namespace qvalued
