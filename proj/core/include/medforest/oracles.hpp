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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "medforest/instance.hpp"
#include "medforest/local_search.hpp"

namespace medforest {

inline constexpr std::uint64_t kSubsetGuard = 10'000'000;
inline constexpr std::size_t kCvrpCustomerGuard = 8;
inline constexpr double kArgminTolerance = 1e-12;  // relative

enum class ObjectiveKind { kMedian, kKTree, kKmf };
std::string_view to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(std::string_view name);

struct OracleObjective {
  ObjectiveKind kind = ObjectiveKind::kMedian;
  Objective kmf;  // used only for kKmf (and the tree metric of kKTree)

  static OracleObjective median() { return {ObjectiveKind::kMedian, {0.0}}; }
  static OracleObjective ktree(MetricKind m = MetricKind::kD) {
    return {ObjectiveKind::kKTree, {1.0, m}};
  }
  static OracleObjective kmf_with(double rho, MetricKind m = MetricKind::kD) {
    return {ObjectiveKind::kKmf, {rho, m}};
  }
};

struct OracleResult {
  OracleObjective objective;
  std::size_t k = 0;
  double opt_value = 0.0;
  std::vector<DepotSet> argmins;  // every set within the tie tolerance
  std::uint64_t subsets_scanned = 0;
};

/// C(n, k) as an integer, saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// Scans every k-subset; throws Error(kGuard) if C(n, k) > kSubsetGuard.
OracleResult brute_subset_opt(const Instance& inst, std::size_t k,
                              const OracleObjective& objective,
                              unsigned threads = 1);

/// Visits every k-subset in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn);

/// min over |S| = k of max{Flow(S), Tree(S)}: lower bound on the k-LocVRP
/// optimum.
struct RoutingLowerBound {
  double value = 0.0;
  DepotSet argmin;
  std::uint64_t subsets_scanned = 0;
};
RoutingLowerBound brute_routing_lower_bound(const Instance& inst,
                                            std::size_t k,
                                            unsigned threads = 1);

/// Exact unsplit-delivery routing cost for fixed depots: optimal partition
/// of the customers into capacity-feasible trips, each toured exactly
/// (Held-Karp) from its cheapest depot. Customers are the positive-demand
/// non-depot vertices; throws Error(kGuard) above `limit` of them.
double brute_cvrp(const Instance& inst, const DepotSet& s,
                  std::size_t limit = kCvrpCustomerGuard);

struct FamilyComparison {
  ObjectiveKind first = ObjectiveKind::kMedian;
  ObjectiveKind second = ObjectiveKind::kMedian;
  bool intersect = false;
  std::size_t min_symmetric_difference = 0;
};

struct DivergenceReport {
  OracleResult median;
  OracleResult ktree;
  OracleResult kmf;
  std::vector<FamilyComparison> pairs;  // (median,ktree) (median,kmf) (ktree,kmf)

  bool pairwise_disjoint() const noexcept;
};

DivergenceReport divergence_report(const Instance& inst, std::size_t k,
                                   double rho,
                                   MetricKind tree_metric = MetricKind::kD,
                                   unsigned threads = 1);

std::size_t symmetric_difference_size(const DepotSet& a, const DepotSet& b);

// ---------------------------------------------------------------------------

template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<Vertex> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<Vertex>(i);
  while (true) {
    fn(static_cast<const std::vector<Vertex>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace medforest
