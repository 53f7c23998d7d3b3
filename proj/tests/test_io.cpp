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

#include <random>
#include <string>

#include "qvalued/counterexample.hpp"
#include "qvalued/io.hpp"
#include "test_support.hpp"

using namespace qvalued;

namespace {

const std::string kDataDir = QVALUED_DATA_DIR;

std::string message_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Io, HexagonFixtureIsTheBuiltInInstance) {
  const Instance inst = parse_instance(read_text_file(kDataDir + "/hexagon.json"));
  EXPECT_EQ(inst.map, hexagon_instance());
  ASSERT_TRUE(inst.point);
  EXPECT_EQ(*inst.point, (Point{0.0, 0.0}));
}

TEST(Io, TooManyAtomsIsADimensionMismatch) {
  const std::string text = R"({"schema_version": 1, "m": 1, "n": 1, "Q": 2,
    "anchors": [{"x": [0], "value": [[0], [1]]}, {"x": [1], "value": [[0], [1], [2]]}]})";
  const std::string msg = message_of(text);
  EXPECT_NE(msg.find("anchors[1].value"), std::string::npos) << msg;
  EXPECT_NE(msg.find("dimension mismatch"), std::string::npos) << msg;
}

TEST(Io, WrongCoordinateCountNamesTheField) {
  const std::string text = R"({"schema_version": 1, "m": 2, "n": 1, "Q": 1,
    "anchors": [{"x": [0, 0], "value": [[0]]}], "point": [1]})";
  EXPECT_NE(message_of(text).find("point: dimension mismatch"), std::string::npos);
}

TEST(Io, MalformedJsonReportsPosition) {
  const std::string msg = message_of("{\"schema_version\": 1,\n \"m\": }");
  EXPECT_NE(msg.find("malformed JSON"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Io, SchemaAndFieldErrors) {
  EXPECT_NE(message_of(R"({"schema_version": 2})").find("schema_version"), std::string::npos);
  EXPECT_NE(message_of(R"({"schema_version": 1, "m": 0})").find("m: expected a positive integer"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"schema_version": 1, "m": 1, "n": 1, "Q": 1})").find("missing field \"anchors\""),
            std::string::npos);
  EXPECT_NE(message_of(R"({"schema_version": 1, "m": 1, "n": 1, "Q": 1,
    "anchors": [{"x": ["a"], "value": [[0]]}]})")
                .find("anchors[0].x[0]"),
            std::string::npos);
}

TEST(Io, CoincidentAnchorsWithDifferentValuesAreRejected) {
  const std::string text = R"({"schema_version": 1, "m": 1, "n": 1, "Q": 1,
    "anchors": [{"x": [0], "value": [[0]]}, {"x": [0], "value": [[1]]}]})";
  EXPECT_NE(message_of(text).find("anchors"), std::string::npos);
}

TEST(Io, ValuesAreCanonicalized) {
  const Instance inst = parse_instance(R"({"schema_version": 1, "m": 1, "n": 1, "Q": 2,
    "anchors": [{"x": [0], "value": [[3], [-1]]}]})");
  const std::string out = serialize_instance(inst);
  EXPECT_LT(out.find("-1.0"), out.find("3.0"));
  EXPECT_FALSE(inst.point);
}

TEST(Io, ConfigFileRoundTrip) {
  const QConfig t{Point{1.5, -2.0}, Point{0.25, 4.0}};
  EXPECT_EQ(parse_config_file(serialize_config(t)), t);
}

TEST(IoProperty, SerializeParseRoundTrip) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const AnchoredMap map = qvalued::testing::random_map(1 + i % 3, 1 + i % 2, 1 + i % 4, 1 + i % 5, rng);
    Instance inst{map, std::nullopt};
    if (i % 2 == 0) inst.point = qvalued::testing::random_point(map.domain_dim(), rng);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(serialize_instance(back), text);
  }
}
