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

#include "fixtures.hpp"
#include "medforest/error.hpp"
#include "medforest/metric.hpp"
#include "medforest/oracles.hpp"
#include "medforest/random.hpp"
#include "medforest/router.hpp"
#include "reference.hpp"

namespace medforest {
namespace {

std::vector<std::vector<Vertex>> as_vectors(const std::vector<DepotSet>& sets) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& s : sets) out.push_back(testing::as_vector(s));
  return out;
}

DepotSet labeled(const Instance& inst, std::initializer_list<const char*> names) {
  std::vector<Vertex> v;
  for (const char* name : names) v.push_back(inst.vertex(name));
  return DepotSet(v);
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(6, 4), 15u);
  EXPECT_EQ(binomial(10, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(40, 20), 137846528820u);
}

TEST(AppendixInstance, MedianOptimum) {
  const Instance inst = gen_appendix(10);
  const auto r = brute_subset_opt(inst, 4, OracleObjective::median());
  EXPECT_EQ(r.opt_value, 11000.0);
  ASSERT_EQ(r.argmins.size(), 1u);
  EXPECT_EQ(r.argmins[0], labeled(inst, {"u1", "u2", "v1", "v2"}));
  EXPECT_EQ(r.subsets_scanned, 15u);
}

TEST(AppendixInstance, KTreeOptimum) {
  const Instance inst = gen_appendix(10);
  const auto r = brute_subset_opt(inst, 4, OracleObjective::ktree());
  EXPECT_EQ(r.opt_value, 110.0);
  EXPECT_EQ(r.argmins.size(), 4u);
}

TEST(AppendixInstance, KmfOptimum) {
  const Instance inst = gen_appendix(10);
  const auto r = brute_subset_opt(inst, 4, OracleObjective::kmf_with(100.0));
  EXPECT_EQ(r.opt_value, 202000.0);
  ASSERT_EQ(r.argmins.size(), 2u);
  EXPECT_EQ(r.argmins[0], labeled(inst, {"u1", "u2", "v0", "v1"}));
  EXPECT_EQ(r.argmins[1], labeled(inst, {"u1", "u2", "v0", "v2"}));
}

TEST(AppendixInstance, FamiliesDiverge) {
  const Instance inst = gen_appendix(10);
  const auto report = divergence_report(inst, 4, 100.0);
  EXPECT_TRUE(report.pairwise_disjoint());
  ASSERT_EQ(report.pairs.size(), 3u);
  for (const auto& p : report.pairs) {
    EXPECT_FALSE(p.intersect);
    EXPECT_GT(p.min_symmetric_difference, 0u);
  }
}

TEST(AppendixInstance, OtherScales) {
  for (long long ell : {3, 5, 20}) {
    const Instance inst = gen_appendix(ell);
    const double l = static_cast<double>(ell);
    const auto med = brute_subset_opt(inst, 4, OracleObjective::median());
    EXPECT_EQ(med.argmins.size(), 1u);
    EXPECT_EQ(med.argmins[0], labeled(inst, {"u1", "u2", "v1", "v2"}));
    EXPECT_NEAR(med.opt_value, l * l * l * l + l * l * l, 1e-9 * med.opt_value);
  }
}

TEST(BruteSubsetOpt, MatchesReferenceScan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed % 4, k = 2 + seed % 2;
    const Instance inst = testing::random_instance(n, k, seed, RandomKind::kShortestPath);
    for (double rho : {0.0, 1.0, 4.0}) {
      const auto got = brute_subset_opt(inst, k, OracleObjective::kmf_with(rho));
      const auto want = reference::subset_opt(n, k, [&](const std::vector<Vertex>& s) {
        return reference::med(inst, s) + rho * reference::contracted_tree(inst.d, s);
      });
      EXPECT_NEAR(got.opt_value, want.value, 1e-9 * std::max(1.0, want.value));
      EXPECT_EQ(as_vectors(got.argmins).front(), want.argmins.front());
      EXPECT_EQ(got.subsets_scanned, binomial(n, k));
    }
  }
}

TEST(BruteSubsetOpt, ThreadCountDoesNotChangeResult) {
  const Instance inst = testing::random_instance(14, 4, 3);
  const auto a = brute_subset_opt(inst, 4, OracleObjective::kmf_with(2.0), 1);
  const auto b = brute_subset_opt(inst, 4, OracleObjective::kmf_with(2.0), 4);
  EXPECT_EQ(a.opt_value, b.opt_value);
  EXPECT_EQ(a.argmins, b.argmins);
}

TEST(BruteSubsetOpt, GuardTrips) {
  const Instance inst = testing::random_instance(60, 10, 0);
  try {
    brute_subset_opt(inst, 10, OracleObjective::median());
    FAIL() << "expected guard";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGuard);
  }
}

TEST(BruteRoutingLowerBound, IsMinOverSubsets) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = testing::random_instance(8, 2, seed);
    const auto got = brute_routing_lower_bound(inst, 2);
    double want = reference::kInf;
    reference::each_subset(8, 2, [&](const std::vector<Vertex>& s) {
      const double flow = 2.0 / *inst.capacity * reference::med(inst, s);
      want = std::min(want, std::max(flow, reference::contracted_tree(inst.d, s)));
    });
    EXPECT_NEAR(got.value, want, 1e-12);
    EXPECT_NEAR(lower_bound(inst, got.argmin), got.value, 1e-12);
  }
}

TEST(BruteCvrp, MatchesPermutationReference) {
  SplitMix64 rng(3);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const std::size_t depots = 1 + seed % 2;
    const std::size_t n = depots + 3 + seed % 4;  // up to 6 customers
    const Instance inst = testing::random_instance(n, depots, seed, RandomKind::kEuclidean,
                                                   1.0 + seed % 3);
    const DepotSet s = random_subset(n, depots, rng);
    const double got = brute_cvrp(inst, s);
    EXPECT_NEAR(got, reference::cvrp(inst, testing::as_vector(s)), 1e-9) << "seed " << seed;
    EXPECT_GE(got, lower_bound(inst, s) - 1e-9);
  }
}

TEST(BruteCvrp, HandComputedLine) {
  // depot at 0; customers at 1,2,3 with demand 1 each; Q = 2.
  const auto inst = testing::line_instance({0, 1, 2, 3}, {0, 1, 1, 1}, 2.0, 1);
  // best: {3,2} (6) + {1} (2) = 8, or {3} + {1,2}: 6 + 4 = 10
  EXPECT_DOUBLE_EQ(brute_cvrp(inst, DepotSet{0}), 8.0);
}

TEST(BruteCvrp, GuardAndInfeasible) {
  const Instance big = testing::random_instance(12, 1, 0);
  try {
    brute_cvrp(big, DepotSet{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGuard);
  }
  const auto bad = testing::line_instance({0, 1}, {0, 3}, 2.0, 1);
  try {
    brute_cvrp(bad, DepotSet{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(SymmetricDifference, Size) {
  EXPECT_EQ(symmetric_difference_size(DepotSet{1, 2, 3}, DepotSet{2, 3, 4}), 2u);
  EXPECT_EQ(symmetric_difference_size(DepotSet{1}, DepotSet{1}), 0u);
}

}  // namespace
}  // namespace medforest
