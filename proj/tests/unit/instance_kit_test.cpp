// Copyright 2026 The medforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "fixtures.hpp"
#include "medforest/error.hpp"
#include "medforest/instance_kit.hpp"
#include "medforest/metric.hpp"
#include "medforest/serialize.hpp"

namespace medforest {
namespace {

TEST(GenAppendix, Shape) {
  const Instance inst = gen_appendix(10);
  EXPECT_EQ(inst.size(), 6u);
  EXPECT_EQ(inst.k, 4u);
  EXPECT_FALSE(inst.capacity.has_value());
  EXPECT_EQ(inst.labels, (std::vector<std::string>{"u0", "u1", "u2", "v0", "v1", "v2"}));
  EXPECT_EQ(inst.demand, (std::vector<double>{1, 1e4, 1e4, 1, 1e4, 1e4}));
  EXPECT_EQ(inst.d(inst.vertex("u0"), inst.vertex("u1")), 1e3);
  EXPECT_EQ(inst.d(inst.vertex("u1"), inst.vertex("u2")), 100.0);
  EXPECT_EQ(inst.d(inst.vertex("v0"), inst.vertex("v2")), 1e4);
  EXPECT_EQ(inst.d(inst.vertex("v1"), inst.vertex("v2")), 10.0);
  EXPECT_EQ(inst.d(inst.vertex("u0"), inst.vertex("v0")), 1e7);
  EXPECT_EQ(inst.annotations.at("recommended_rho"), "100.0");
}

TEST(GenAppendix, ValidMetricForEveryScale) {
  for (long long ell = 2; ell <= 30; ++ell)
    EXPECT_TRUE(validate_instance(gen_appendix(ell)).valid()) << "ell " << ell;
  EXPECT_THROW(gen_appendix(1), Error);
}

TEST(GenGap, ShapeAndPseudometrics) {
  for (std::size_t k = 2; k <= 6; ++k) {
    const Instance inst = gen_gap(k, 100, 1e6);
    EXPECT_EQ(inst.size(), 2 * k);
    ASSERT_TRUE(inst.c.has_value());
    EXPECT_TRUE(validate_instance(inst).valid()) << "k " << k;
    Instance as_c = inst;
    as_c.d = *inst.c;
    as_c.c.reset();
    EXPECT_TRUE(validate_instance(as_c).valid()) << "c metric, k " << k;
    EXPECT_FALSE(consistency_check(inst).consistent);
  }
  EXPECT_EQ(gap_vertex(1, 1), 0u);
  EXPECT_EQ(gap_vertex(3, 2), 5u);
}

TEST(GenRandom, DeterministicAndValid) {
  for (auto kind : {RandomKind::kEuclidean, RandomKind::kShortestPath}) {
    RandomInstanceOptions options;
    options.n = 15;
    options.seed = 42;
    options.kind = kind;
    const Instance a = gen_random(options), b = gen_random(options);
    EXPECT_EQ(dump_instance(a), dump_instance(b));
    EXPECT_TRUE(validate_instance(a).valid());
    for (double q : a.demand) {
      EXPECT_GE(q, 1.0);
      EXPECT_LE(q, 5.0);
      EXPECT_EQ(q, std::floor(q));
    }
    options.seed = 43;
    EXPECT_NE(dump_instance(gen_random(options)), dump_instance(a));
  }
}

TEST(NativeJson, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = testing::random_instance(8, 2, seed);
    const std::string text = dump_instance(inst);
    EXPECT_EQ(dump_instance(parse_instance(text)), text);
  }
  const Instance gap = gen_gap(3, 10, 1e3);
  EXPECT_EQ(dump_instance(parse_instance(dump_instance(gap))), dump_instance(gap));
}

TEST(NativeJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "medforest_kit_test.json";
  const Instance inst = gen_appendix(4);
  write_instance(path, inst);
  EXPECT_EQ(dump_instance(read_instance(path)), dump_instance(inst));
  std::filesystem::remove(path);
  try {
    read_instance(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(NativeJson, MalformedInputReportsPosition) {
  try {
    parse_instance("{\"n\": 3, ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_instance("{\"n\": 2}"), Error);
}

TEST(Tsplib, ThreeNodeEuc2d) {
  const char* text =
      "NAME : tiny-k2\n"
      "TYPE : CVRP\n"
      "DIMENSION : 3\n"
      "EDGE_WEIGHT_TYPE : EUC_2D\n"
      "CAPACITY : 10\n"
      "NODE_COORD_SECTION\n"
      "1 0 0\n"
      "2 3 4\n"
      "3 1 1\n"
      "DEMAND_SECTION\n"
      "1 0\n"
      "2 4\n"
      "3 7\n"
      "DEPOT_SECTION\n"
      "1\n"
      "-1\n"
      "EOF\n";
  const Instance inst = parse_tsplib_cvrp(text);
  ASSERT_EQ(inst.size(), 3u);
  // sqrt(25) = 5, sqrt(2) = 1.41 -> 1, sqrt(13) = 3.61 -> 4
  EXPECT_EQ(inst.d(0, 1), 5.0);
  EXPECT_EQ(inst.d(0, 2), 1.0);
  EXPECT_EQ(inst.d(1, 2), 4.0);
  EXPECT_EQ(inst.demand, (std::vector<double>{0, 4, 7}));
  EXPECT_EQ(*inst.capacity, 10.0);
  EXPECT_EQ(inst.k, 2u);
  EXPECT_EQ(inst.annotations.at("tsplib_depot"), "1");
  EXPECT_EQ(parse_tsplib_cvrp(text, 1).k, 1u);
}

TEST(Tsplib, ExplicitFullMatrix) {
  const char* text =
      "NAME : m\nDIMENSION : 3\nCAPACITY : 5\nEDGE_WEIGHT_TYPE : EXPLICIT\n"
      "EDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 2 3\n2 0 4\n3 4 0\n"
      "DEMAND_SECTION\n1 0\n2 1\n3 1\nEOF\n";
  const Instance inst = parse_tsplib_cvrp(text);
  EXPECT_EQ(inst.d(1, 2), 4.0);
  EXPECT_EQ(inst.k, 1u);
}

TEST(Tsplib, Errors) {
  try {
    parse_tsplib_cvrp("NAME : x\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : GEO\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("GEO"), std::string::npos);
  }
  try {
    parse_tsplib_cvrp(
        "NAME : x\nDIMENSION : 2\nCAPACITY : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
        "NODE_COORD_SECTION\n1 0 0\n2 zz 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos) << e.what();
  }
}

TEST(CloseMetric, RepairsTriangleViolations) {
  Instance inst = testing::line_instance({0, 1, 2}, {1, 1, 1}, 2.0, 1);
  inst.d.set_symmetric(0, 2, 5.0);
  EXPECT_FALSE(validate_instance(inst).valid());
  EXPECT_EQ(close_metric(inst), 1u);  // one unordered pair
  EXPECT_EQ(inst.d(0, 2), 2.0);
  EXPECT_TRUE(validate_instance(inst).valid());
}

TEST(EuclideanMatrix, Distances) {
  const std::vector<std::array<double, 2>> pts{{0, 0}, {3, 4}};
  const auto m = euclidean_matrix(pts);
  EXPECT_EQ(m(0, 1), 5.0);
  EXPECT_EQ(m(1, 0), 5.0);
}

}  // namespace
}  // namespace medforest
