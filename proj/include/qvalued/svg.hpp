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

// Standalone SVG plots of planar instances (m = n = 2). Each anchor is one
// <g class="glyph anchor"> group: a square at the anchor point and a circle per
// atom of its value. An extension candidate adds one highlighted
// <g class="glyph candidate"> group with a diamond at p and stars at its atoms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qvalued/errors.hpp"
#include "qvalued/lipmap.hpp"

namespace qvalued {

struct SvgCandidate {
  Point point;
  QConfig value;
};

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

inline constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b",
                                                         "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace svg_detail

inline bool renderable(const AnchoredMap& map) { return map.domain_dim() == 2 && map.value_dim() == 2; }

inline std::string render_svg(const AnchoredMap& map, const std::optional<SvgCandidate>& candidate = std::nullopt) {
  using svg_detail::num;
  if (!renderable(map)) {
    throw DimensionMismatchError("not renderable: plots need m = n = 2 (got m = " +
                                 std::to_string(map.domain_dim()) + ", n = " +
                                 std::to_string(map.value_dim()) + ")");
  }

  // Data coordinates with y flipped into SVG orientation.
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  auto grow = [&](const Point& p) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, -p[1]);
    ymax = std::max(ymax, -p[1]);
  };
  for (const auto& a : map.anchors()) {
    grow(a.x);
    for (const auto& atom : a.value.atoms()) grow(atom);
  }
  if (candidate) {
    grow(candidate->point);
    for (const auto& atom : candidate->value.atoms()) grow(atom);
  }
  if (!std::isfinite(xmin)) xmin = xmax = ymin = ymax = 0.0;
  double w = xmax - xmin, h = ymax - ymin;
  if (w <= 0.0) w = 1.0;
  if (h <= 0.0) h = 1.0;
  const double vx = xmin - 0.1 * w, vy = ymin - 0.1 * h, vw = 1.2 * w, vh = 1.2 * h;
  const double r = 0.012 * std::max(vw, vh);

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
    << "viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw) << ' ' << num(vh) << "\">\n";
  s << "  <rect x=\"" << num(vx) << "\" y=\"" << num(vy) << "\" width=\"" << num(vw) << "\" height=\""
    << num(vh) << "\" fill=\"white\"/>\n";

  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto& a = map[i];
    const char* color = svg_detail::kPalette[i % svg_detail::kPalette.size()];
    s << "  <g class=\"glyph anchor\" id=\"anchor-" << i << "\" fill=\"" << color << "\" stroke=\""
      << color << "\">\n";
    s << "    <rect x=\"" << num(a.x[0] - r) << "\" y=\"" << num(-a.x[1] - r) << "\" width=\""
      << num(2 * r) << "\" height=\"" << num(2 * r) << "\"/>\n";
    for (const auto& atom : a.value.atoms()) {
      s << "    <line x1=\"" << num(a.x[0]) << "\" y1=\"" << num(-a.x[1]) << "\" x2=\"" << num(atom[0])
        << "\" y2=\"" << num(-atom[1]) << "\" stroke-width=\"" << num(r / 4) << "\" stroke-dasharray=\""
        << num(r) << "\" opacity=\"0.5\"/>\n";
      s << "    <circle cx=\"" << num(atom[0]) << "\" cy=\"" << num(-atom[1]) << "\" r=\"" << num(r) << "\"/>\n";
    }
    s << "  </g>\n";
  }

  if (candidate) {
    const Point& p = candidate->point;
    s << "  <g class=\"glyph candidate\" id=\"candidate\" fill=\"#d62728\" stroke=\"#d62728\">\n";
    s << "    <polygon points=\"" << num(p[0]) << ',' << num(-p[1] - 1.5 * r) << ' ' << num(p[0] + 1.5 * r)
      << ',' << num(-p[1]) << ' ' << num(p[0]) << ',' << num(-p[1] + 1.5 * r) << ' ' << num(p[0] - 1.5 * r)
      << ',' << num(-p[1]) << "\"/>\n";
    for (const auto& atom : candidate->value.atoms()) {
      s << "    <polygon points=\"";
      for (int v = 0; v < 10; ++v) {
        const double ang = -std::acos(-1.0) / 2.0 + v * std::acos(-1.0) / 5.0;
        const double rad = (v % 2 == 0) ? 1.8 * r : 0.8 * r;
        if (v > 0) s << ' ';
        s << num(atom[0] + rad * std::cos(ang)) << ',' << num(-atom[1] + rad * std::sin(ang));
      }
      s << "\"/>\n";
    }
    s << "  </g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace qvalued
