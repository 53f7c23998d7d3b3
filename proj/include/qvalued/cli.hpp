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

// Command dispatch for the `qvalued` tool. Kept header-only so tests can drive
// it in-process; tools/qvalued.cpp only forwards argv.
//
// Exit codes: 0 success, 2 usage, 3 verification failure, 4 computation error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qvalued/counterexample.hpp"
#include "qvalued/extend.hpp"
#include "qvalued/io.hpp"
#include "qvalued/lipmap.hpp"
#include "qvalued/qspace.hpp"
#include "qvalued/search.hpp"
#include "qvalued/svg.hpp"

namespace qvalued::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitComputation = 4;

/// Fixed 12-digit decimal text used for every printed real.
inline std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

inline std::string fmt(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ' ';
    s += fmt(p[i]);
  }
  return s;
}

inline Point parse_point_arg(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream in(cleaned);
  std::vector<double> coords;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError("--point: cannot read \"" + tok + "\" as a number");
    coords.push_back(v);
  }
  if (coords.empty()) throw ParseError("--point: no coordinates given");
  return Point(std::move(coords));
}

inline void print_search_report(const SearchReport& rep, std::ostream& out) {
  const auto& p = rep.params;
  out << "params m=" << p.m << " n=" << p.n << " Q=" << p.q << " k=" << p.k << " budget=" << p.budget
      << " seed=" << p.seed << '\n';
  out << "best_ratio " << fmt(rep.best_ratio) << '\n';
  out << "evaluations " << rep.evaluations << '\n';
  out << "resampled " << rep.resampled << '\n';
  out << "history\n";
  for (const auto& h : rep.history) out << "  " << h.iteration << ' ' << fmt(h.ratio) << '\n';
  if (rep.best) {
    out << "best_instance\n" << serialize_instance(Instance{rep.best->map, rep.best->point});
  }
}

/// Runs one command. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Q-valued configurations, G-distance and one-point Lipschitz extensions", "qvalued"};
  app.require_subcommand(1);

  std::vector<std::string> dist_files;
  auto* dist = app.add_subcommand("dist", "G-distance between two configuration files");
  dist->add_option("files", dist_files, "FILE_A FILE_B")->expected(2)->required();

  std::string lip_file;
  auto* lip = app.add_subcommand("lip", "Lipschitz constant of an instance");
  lip->add_option("file", lip_file)->required();

  std::string ext_file, ext_point;
  bool ext_heuristic = false;
  double ext_tol = 1e-10;
  std::uint64_t ext_seed = 0;
  auto* ext = app.add_subcommand("extend", "Optimal one-point extension at --point");
  ext->add_option("file", ext_file)->required();
  ext->add_option("--point", ext_point, "coordinates, e.g. \"0 0\" (defaults to the file's point)");
  ext->add_flag("--heuristic", ext_heuristic, "allow local search when profiles exceed the cap");
  ext->add_option("--tol", ext_tol, "subproblem tolerance")->capture_default_str();
  ext->add_option("--seed", ext_seed, "seed for heuristic restarts")->capture_default_str();

  double ver_tol = 1e-3, ver_grid = 0.02;
  auto* ver = app.add_subcommand("verify-hexagon", "Certify the hexagon counterexample");
  ver->add_option("--tol", ver_tol)->capture_default_str();
  ver->add_option("--grid", ver_grid, "grid step of the lower-bound certificate")->capture_default_str();

  SearchParams sp;
  std::string search_init;
  auto* search = app.add_subcommand("search", "Randomized search for large extension ratios");
  search->add_option("--m", sp.m)->capture_default_str();
  search->add_option("--n", sp.n)->capture_default_str();
  search->add_option("--q", sp.q)->capture_default_str();
  search->add_option("--k", sp.k)->capture_default_str();
  search->add_option("--budget", sp.budget)->capture_default_str();
  search->add_option("--seed", sp.seed)->capture_default_str();
  search->add_option("--init", search_init, "start from this instance (must carry a point)");

  std::string render_file, render_out;
  auto* render = app.add_subcommand("render", "SVG plot of a planar instance");
  render->add_option("file", render_file)->required();
  render->add_option("--out", render_out, "output SVG path")->required();

  std::vector<const char*> argv{"qvalued"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  try {
    if (dist->parsed()) {
      const QConfig a = parse_config_file(read_text_file(dist_files[0]));
      const QConfig b = parse_config_file(read_text_file(dist_files[1]));
      out << fmt(g_distance(a, b)) << '\n';
      return kExitOk;
    }
    if (lip->parsed()) {
      const Instance inst = parse_instance(read_text_file(lip_file));
      out << fmt(lip_constant(inst.map)) << '\n';
      return kExitOk;
    }
    if (ext->parsed()) {
      const Instance inst = parse_instance(read_text_file(ext_file));
      std::optional<Point> p = inst.point;
      if (!ext_point.empty()) p = parse_point_arg(ext_point);
      if (!p) throw ParseError("extend: no --point given and the instance has no \"point\"");
      ExtendOptions opts;
      opts.tol = ext_tol;
      opts.allow_heuristic = ext_heuristic;
      opts.seed = ext_seed;
      const ExtensionResult r = solve_one_point(inst.map, *p, opts);
      const double lipf = lip_constant(inst.map);
      out << "status " << to_string(r.status) << '\n';
      out << "stretch " << fmt(r.stretch) << '\n';
      out << "lower_bound " << fmt(r.lower_bound) << '\n';
      out << "lip " << fmt(lipf) << '\n';
      if (lipf > 0.0) out << "ratio " << fmt(r.stretch / lipf) << '\n';
      out << "value\n";
      for (const auto& atom : r.value.atoms()) out << "  " << fmt(atom) << '\n';
      out << "active_anchors";
      for (std::size_t i : r.active_anchors) out << ' ' << i;
      out << '\n';
      return kExitOk;
    }
    if (ver->parsed()) {
      const HexagonReport rep = verify_counterexample(ver_tol, ver_grid);
      for (const auto& c : rep.claims) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << fmt(c.value) << " (target "
            << fmt(c.target) << ", tol " << c.tolerance << ")\n";
      }
      out << "lip_f " << fmt(rep.lip_f) << '\n';
      out << "lower_bound " << fmt(rep.min_stretch_lb) << '\n';
      out << "min_stretch " << fmt(rep.min_stretch_found) << '\n';
      out << "constant_ratio " << fmt(rep.constant_ratio) << '\n';
      out << "verdict " << (rep.verdict() ? "pass" : "fail") << '\n';
      return rep.verdict() ? kExitOk : kExitVerifyFailed;
    }
    if (search->parsed()) {
      std::optional<SearchInstance> start;
      if (!search_init.empty()) {
        Instance inst = parse_instance(read_text_file(search_init));
        if (!inst.point) throw ParseError(search_init + ": start instance needs a \"point\"");
        start = SearchInstance{std::move(inst.map), std::move(*inst.point)};
      }
      print_search_report(lower_bound_search(sp, std::move(start)), out);
      return kExitOk;
    }
    if (render->parsed()) {
      const Instance inst = parse_instance(read_text_file(render_file));
      if (!renderable(inst.map)) {
        err << "not renderable: plots need m = n = 2 (got m = " << inst.map.domain_dim()
            << ", n = " << inst.map.value_dim() << ")\n";
        return kExitComputation;
      }
      std::optional<SvgCandidate> cand;
      if (inst.point && !inst.map.empty()) {
        ExtendOptions opts;
        opts.allow_heuristic = true;
        cand = SvgCandidate{*inst.point, solve_one_point(inst.map, *inst.point, opts).value};
      }
      std::ofstream f(render_out, std::ios::binary);
      if (!f) throw Error("cannot write " + render_out);
      f << render_svg(inst.map, cand);
      if (!f) throw Error("failed writing " + render_out);
      out << "wrote " << render_out << " (" << inst.map.size() + (cand ? 1 : 0) << " glyph groups)\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace qvalued::cli
