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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "qvalued/cli.hpp"
#include "qvalued/counterexample.hpp"
#include "qvalued/extend.hpp"
#include "qvalued/search.hpp"
#include "test_support.hpp"

using namespace qvalued;
namespace qt = qvalued::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s | %s | %.3f s (limit %g s)%s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs, budget_seconds, in_time ? "" : " OVER TIME");
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string report_text(const SearchReport& rep) {
  std::ostringstream os;
  cli::print_search_report(rep, os);
  return os.str();
}

}  // namespace

int main() {
  const AnchoredMap hex = hexagon_instance();

  criterion(1, "domain distances |A-B| = |A-C| = |B-C| = sqrt(3)", 1e-3, [&] {
    const double s3 = std::sqrt(3.0);
    double worst = 0.0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      worst = std::max(worst, std::abs(distance(hex[i].x, hex[j].x) - s3));
    return Outcome{worst <= 1e-12, "max error " + sci(worst)};
  });

  criterion(2, "value distances G = sqrt(2) for all three pairs", 1e-3, [&] {
    const double s2 = std::sqrt(2.0);
    double worst = 0.0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      worst = std::max(worst, std::abs(g_distance(hex[i].value, hex[j].value) - s2));
    return Outcome{worst <= 1e-12, "max error " + sci(worst)};
  });

  criterion(3, "Lip(f) = sqrt(2/3)", 1e-3, [&] {
    const double lip = lip_constant(hex);
    return Outcome{std::abs(lip - std::sqrt(2.0 / 3.0)) <= 1e-12, "Lip(f) = " + num(lip)};
  });

  criterion(4, "certified lower bound and optimal stretch at the origin", 300.0, [&] {
    const Point origin{0.0, 0.0};
    const double lb = certified_lower_bound(hex, origin, 0.02);
    const ExtensionResult r = solve_one_point(hex, origin);
    const double ratio = r.stretch / lip_constant(hex);
    const bool ok = lb >= 1.0 - 1e-3 && r.stretch >= 1.0 - 1e-6 &&
                    r.status == ExtensionStatus::kOptimalWithinTolerance && ratio >= std::sqrt(1.5) - 1e-3;
    return Outcome{ok, "grid lower bound " + num(lb) + ", min stretch " + num(r.stretch) + ", ratio " + num(ratio)};
  });

  criterion(5, "g_distance equals brute force on 500 pairs per (Q, n)", 30.0, [&] {
    std::mt19937_64 rng(1005);
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t q = 2; q <= 6; ++q) {
      for (std::size_t n = 1; n <= 3; ++n) {
        for (int i = 0; i < 500; ++i) {
          const QConfig a = qt::random_config(q, n, rng);
          const QConfig b = qt::random_config(q, n, rng);
          worst = std::max(worst, std::abs(g_distance(a, b) - g_distance_bruteforce(a, b)));
          ++cases;
        }
      }
    }
    return Outcome{worst <= 1e-9, std::to_string(cases) + " pairs, max error " + sci(worst)};
  });

  criterion(6, "metric axioms on 1000 random triples", 30.0, [&] {
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> lam(0.0, 5.0);
    int bad = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      const std::size_t q = 1 + i % 5, n = 1 + i % 3;
      const QConfig a = qt::random_config(q, n, rng);
      const QConfig b = qt::random_config(q, n, rng);
      const QConfig c = qt::random_config(q, n, rng);
      const double ab = g_distance(a, b);
      if (std::abs(ab - g_distance(b, a)) > 1e-12) ++bad;
      std::vector<Point> atoms(a.atoms().begin(), a.atoms().end());
      std::shuffle(atoms.begin(), atoms.end(), rng);
      const QConfig a2(std::move(atoms));
      if (std::abs(g_distance(a2, b) - ab) > 1e-12) ++bad;
      if (g_distance(a, a2) > 1e-12) ++bad;
      if ((ab <= 1e-12) != approx_equal(a, b, 1e-12)) ++bad;
      const double slack = ab + g_distance(b, c) - g_distance(a, c);
      min_slack = std::min(min_slack, slack);
      if (slack < -1e-9) ++bad;
      const Point v = qt::random_point(n, rng);
      if (std::abs(g_distance(transformed(a, 1.0, v), transformed(b, 1.0, v)) - ab) > 1e-9) ++bad;
      const double l = lam(rng);
      const Point zero = Point::origin(n);
      if (std::abs(g_distance(transformed(a, l, zero), transformed(b, l, zero)) - l * ab) > 1e-9) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " violations, min triangle slack " + sci(min_slack)};
  });

  // Criteria 7 and 8 share one batch of instances.
  std::vector<std::pair<AnchoredMap, Point>> batch;
  {
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<std::size_t> dim(1, 3), qd(1, 3), kd(1, 5);
    for (int i = 0; i < 200; ++i) {
      const std::size_t m = dim(rng), n = dim(rng), q = qd(rng), k = kd(rng);
      AnchoredMap map = qt::random_map(m, n, q, k, rng);
      Point p = qt::random_point_away(map, rng);
      batch.emplace_back(std::move(map), std::move(p));
    }
  }

  criterion(7, "nearest-point stretch <= 2 Lip(f) on 200 instances", 120.0, [&] {
    int bad = 0;
    double worst = 0.0;
    for (const auto& [map, p] : batch) {
      const double lip = lip_constant(map);
      const double s = nearest_point_extension(map, p).stretch;
      if (s > 2.0 * lip + 1e-9) ++bad;
      if (lip > 0.0) worst = std::max(worst, s / lip);
    }
    return Outcome{bad == 0, std::to_string(bad) + " violations, max stretch/Lip " + num(worst)};
  });

  criterion(8, "optimal stretch <= nearest-point stretch on the same 200 instances", 120.0, [&] {
    int bad = 0;
    for (const auto& [map, p] : batch) {
      if (solve_one_point(map, p).stretch > nearest_point_extension(map, p).stretch + 1e-9) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " violations"};
  });

  criterion(9, "Q = 1 matches the one-center oracle; (1,1,1,2) search ratio <= 1", 120.0, [&] {
    std::mt19937_64 rng(1009);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const AnchoredMap map = qt::random_map(1 + i % 3, 1 + i % 2, 1, 2 + i % 4, rng);
      const Point p = qt::random_point_away(map, rng);
      worst = std::max(worst, std::abs(solve_one_point(map, p).stretch - qt::classical_extension_oracle(map, p)));
    }
    const SearchReport rep = lower_bound_search(SearchParams{1, 1, 1, 2, 2000, 9});
    return Outcome{worst <= 1e-8 && rep.best && rep.best_ratio <= 1.0 + 1e-6,
                   "max oracle error " + sci(worst) + ", searched ratio " + num(rep.best_ratio)};
  });

  criterion(10, "search seeded at the hexagon: ratio kept, monotone, reproducible", 120.0, [&] {
    const SearchParams params{2, 2, 2, 3, 1000, 10};
    const SearchInstance start{hex, Point{0.0, 0.0}};
    const SearchReport a = lower_bound_search(params, start);
    const SearchReport b = lower_bound_search(params, start);
    bool monotone = true;
    for (std::size_t i = 1; i < a.history.size(); ++i) monotone = monotone && a.history[i].ratio > a.history[i - 1].ratio;
    const bool same = report_text(a) == report_text(b);
    const bool ok = a.best_ratio >= std::sqrt(1.5) - 1e-6 && monotone && same;
    return Outcome{ok, "best ratio " + num(a.best_ratio) + ", " + std::to_string(a.history.size()) +
                           " improvements, reports identical: " + (same ? "yes" : "no")};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
