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

// JSON instance files.
//
//   {
//     "schema_version": 1,
//     "m": 2, "n": 2, "Q": 2,
//     "anchors": [ {"x": [0, 1], "value": [[0, -1], [0, 1]]}, ... ],
//     "point": [0, 0]                       (optional)
//   }
//
// A single configuration (used by `dist`) is
//
//   { "schema_version": 1, "n": 2, "Q": 2, "value": [[0, -1], [0, 1]] }

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qvalued/errors.hpp"
#include "qvalued/lipmap.hpp"

namespace qvalued {

inline constexpr int kSchemaVersion = 1;

struct Instance {
  AnchoredMap map;
  std::optional<Point> point;

  friend bool operator==(const Instance&, const Instance&) = default;
};

namespace io_detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  const std::string where = path.empty() ? "instance" : path;
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::size_t positive_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  const std::string where = path.empty() ? key : path + "." + key;
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(where + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}

inline void check_schema(const json& root) {
  const json& v = field(root, "schema_version", "");
  if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
    throw ParseError("schema_version: unsupported value " + v.dump() + " (expected " +
                     std::to_string(kSchemaVersion) + ")");
  }
}

inline Point parse_point(const json& v, std::size_t dim, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of " + std::to_string(dim) + " numbers");
  if (v.size() != dim) {
    throw ParseError(path + ": dimension mismatch, got " + std::to_string(v.size()) +
                     " coordinates, expected " + std::to_string(dim));
  }
  std::vector<double> c;
  c.reserve(dim);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ParseError(path + "[" + std::to_string(i) + "]: expected a number");
    const double x = v[i].get<double>();
    if (!std::isfinite(x)) throw ParseError(path + "[" + std::to_string(i) + "]: not finite");
    c.push_back(x);
  }
  return Point(std::move(c));
}

inline QConfig parse_config(const json& v, std::size_t q, std::size_t n, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of " + std::to_string(q) + " atoms");
  if (v.size() != q) {
    throw ParseError(path + ": dimension mismatch, got " + std::to_string(v.size()) +
                     " atoms, expected Q = " + std::to_string(q));
  }
  std::vector<Point> atoms;
  atoms.reserve(q);
  for (std::size_t j = 0; j < q; ++j) atoms.push_back(parse_point(v[j], n, path + "[" + std::to_string(j) + "]"));
  return QConfig(std::move(atoms));
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline ordered_json point_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

inline ordered_json config_json(const QConfig& t) {
  ordered_json a = ordered_json::array();
  for (const auto& atom : t.atoms()) a.push_back(point_json(atom));
  return a;
}

}  // namespace io_detail

/// Parses and validates an instance. Values come back canonicalized.
inline Instance parse_instance(const std::string& text) {
  using namespace io_detail;
  const json root = parse_json(text);
  check_schema(root);
  const std::size_t m = positive_int(root, "m", "");
  const std::size_t n = positive_int(root, "n", "");
  const std::size_t q = positive_int(root, "Q", "");
  const json& anchors = field(root, "anchors", "");
  if (!anchors.is_array()) throw ParseError("anchors: expected an array");

  std::vector<Anchor> list;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const std::string path = "anchors[" + std::to_string(i) + "]";
    Point x = parse_point(field(anchors[i], "x", path), m, path + ".x");
    QConfig value = parse_config(field(anchors[i], "value", path), q, n, path + ".value");
    list.push_back(Anchor{std::move(x), std::move(value)});
  }
  std::optional<Point> point;
  if (root.contains("point")) point = parse_point(root["point"], m, "point");
  try {
    return Instance{AnchoredMap(m, n, q, std::move(list)), std::move(point)};
  } catch (const NonLipschitzError& e) {
    throw ParseError(std::string("anchors: ") + e.what());
  }
}

inline std::string serialize_instance(const Instance& inst) {
  using namespace io_detail;
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  root["m"] = inst.map.domain_dim();
  root["n"] = inst.map.value_dim();
  root["Q"] = inst.map.q();
  ordered_json anchors = ordered_json::array();
  for (const auto& a : inst.map.anchors()) {
    ordered_json entry;
    entry["x"] = point_json(a.x);
    entry["value"] = config_json(a.value);
    anchors.push_back(std::move(entry));
  }
  root["anchors"] = std::move(anchors);
  if (inst.point) root["point"] = point_json(*inst.point);
  return root.dump(2) + "\n";
}

inline QConfig parse_config_file(const std::string& text) {
  using namespace io_detail;
  const json root = parse_json(text);
  check_schema(root);
  const std::size_t n = positive_int(root, "n", "");
  const std::size_t q = positive_int(root, "Q", "");
  return parse_config(field(root, "value", ""), q, n, "value");
}

inline std::string serialize_config(const QConfig& t) {
  using namespace io_detail;
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  root["n"] = t.dim();
  root["Q"] = t.q();
  root["value"] = config_json(t);
  return root.dump(2) + "\n";
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qvalued
