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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qvalued/cli.hpp"
#include "qvalued/counterexample.hpp"
#include "qvalued/search.hpp"
#include "test_support.hpp"

using namespace qvalued;

namespace {

SearchInstance hexagon_start() { return SearchInstance{hexagon_instance(), Point{0.0, 0.0}}; }

std::string report_text(const SearchReport& rep) {
  std::ostringstream os;
  cli::print_search_report(rep, os);
  return os.str();
}

void expect_monotone(const SearchReport& rep) {
  for (std::size_t i = 1; i < rep.history.size(); ++i) {
    EXPECT_GT(rep.history[i].ratio, rep.history[i - 1].ratio);
    EXPECT_GT(rep.history[i].iteration, rep.history[i - 1].iteration);
  }
}

}  // namespace

TEST(Search, HexagonSeedNeverDropsBelowItsRatio) {
  const SearchParams params{2, 2, 2, 3, 300, 7};
  const SearchReport rep = lower_bound_search(params, hexagon_start());
  ASSERT_TRUE(rep.best);
  ASSERT_FALSE(rep.history.empty());
  EXPECT_EQ(rep.history.front().iteration, 0u);
  EXPECT_NEAR(rep.history.front().ratio, 1.5, 1e-9);
  EXPECT_GE(rep.best_ratio, std::sqrt(1.5) - 1e-6);
  EXPECT_LE(rep.best_ratio, kRatioCap);
  expect_monotone(rep);
  const auto again = extension_ratio(rep.best->map, rep.best->point);
  ASSERT_TRUE(again);
  EXPECT_NEAR(*again, rep.best_ratio, 1e-9);
}

TEST(Search, IdenticalSeedsGiveIdenticalReports) {
  const SearchParams params{2, 2, 2, 3, 200, 11};
  EXPECT_EQ(report_text(lower_bound_search(params)), report_text(lower_bound_search(params)));
  EXPECT_EQ(report_text(lower_bound_search(params, hexagon_start())),
            report_text(lower_bound_search(params, hexagon_start())));
  SearchParams other = params;
  other.seed = 12;
  EXPECT_NE(report_text(lower_bound_search(params)), report_text(lower_bound_search(other)));
}

TEST(Search, ClassicalLineCaseStaysAtOne) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SearchReport rep = lower_bound_search(SearchParams{1, 1, 1, 2, 2000, seed});
    ASSERT_TRUE(rep.best);
    EXPECT_LE(rep.best_ratio, 1.0 + 1e-6);
    expect_monotone(rep);
  }
}

TEST(Search, RandomStartFindsRatioAboveOne) {
  const SearchReport rep = lower_bound_search(SearchParams{2, 2, 2, 3, 10000, 0});
  ASSERT_TRUE(rep.best);
  EXPECT_GE(rep.best_ratio, 1.05);
  EXPECT_LE(rep.best_ratio, kRatioCap);
  EXPECT_EQ(rep.evaluations + rep.resampled, 10000u);
  expect_monotone(rep);
}

TEST(Search, RejectsBadParameters) {
  EXPECT_THROW(lower_bound_search(SearchParams{0, 2, 2, 3, 10, 0}), std::invalid_argument);
  EXPECT_THROW(lower_bound_search(SearchParams{2, 2, 2, 3, 0, 0}), std::invalid_argument);
  EXPECT_THROW(lower_bound_search(SearchParams{2, 2, 5, 4, 10, 0}), CapacityError);
  EXPECT_THROW(lower_bound_search(SearchParams{3, 2, 2, 3, 10, 0}, hexagon_start()), DimensionMismatchError);
}

TEST(ExtensionRatio, DegenerateInstancesAreSkipped) {
  const AnchoredMap map = hexagon_instance();
  EXPECT_FALSE(extension_ratio(map, Point{0.0, 0.99}));  // within 0.05 of A
  const QConfig c{Point{0.0, 0.0}, Point{1.0, 1.0}};
  const AnchoredMap flat = AnchoredMap(2, 2, 2).with_anchor(Point{1.0, 0.0}, c).with_anchor(Point{-1.0, 0.0}, c);
  EXPECT_FALSE(extension_ratio(flat, Point{0.0, 0.0}));
}

TEST(ExtensionRatio, ScaleInvariance) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> lam(1.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const AnchoredMap map = qvalued::testing::random_map(2, 2, 2, 3, rng, 0.1);
    const Point p = qvalued::testing::random_point_away(map, rng, 0.1);
    const auto base = extension_ratio(map, p);
    if (!base) continue;
    const double l = lam(rng);
    std::vector<Anchor> scaled;
    for (const auto& a : map.anchors()) {
      scaled.push_back(Anchor{l * a.x, transformed(a.value, l, Point::origin(2))});
    }
    const auto r = extension_ratio(AnchoredMap(2, 2, 2, scaled), l * p);
    ASSERT_TRUE(r);
    EXPECT_NEAR(*r, *base, 1e-9);
  }
}
