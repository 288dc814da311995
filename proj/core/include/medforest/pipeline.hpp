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
#include <string_view>
#include <vector>

#include "medforest/local_search.hpp"
#include "medforest/metric.hpp"
#include "medforest/router.hpp"

namespace medforest {

/// Instances with at most this many vertices also get the exhaustive
/// min_S max{Flow, Tree} bound in their SolveResult.
inline constexpr std::size_t kExhaustiveBoundMaxN = 12;

enum class SolveMode { kLocVrp, kKmf, kKMedian, kKTree, kBicriteria };
std::string_view to_string(SolveMode mode);
SolveMode solve_mode_from_string(std::string_view name);

struct SolveOptions {
  std::size_t t = 2;
  double delta = 1e-7;
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Only read by kKmf.
  Objective objective;
};

struct SolveResult {
  SolveMode mode = SolveMode::kLocVrp;
  SolveOptions params;
  DepotSet depots;
  Objective objective;     // objective the depots were optimized for
  ObjectiveReport report;  // evaluated at `depots` under `objective`
  std::optional<RoutePlan> plan;
  // lower_bound(depots): certifies the routing cost for these depots.
  std::optional<double> lb;
  std::optional<double> ratio;  // plan cost / lb
  // Exhaustive min over |S| = k of max{Flow, Tree} (n <= 12 only); a bound
  // on the k-LocVRP optimum itself.
  std::optional<double> global_lb;
  std::optional<double> global_ratio;
  double budget_factor = 1.0;  // |depots| / k
  std::optional<std::uint64_t> best_seed;
  std::optional<SearchTrace> trace;  // trace of the winning restart
  // Bicriteria parts.
  std::optional<DepotSet> median_depots;
  std::optional<DepotSet> tree_depots;
};

/// Best of `restarts` local searches; seeds seed, seed+1, ... Ties in Phi go
/// to the lowest seed.
SearchResult multi_start_search(const Instance& inst, const Objective& objective,
                                std::size_t k, const SolveOptions& options);

/// Depot selection of solve_klocvrp: k-median-forest with weights q and
/// rho = Q / 2.
SearchResult locate_depots(const Instance& inst, const SolveOptions& options);

/// Locate depots through the k-median-forest reduction, then route.
SolveResult solve_klocvrp(const Instance& inst, const SolveOptions& options);

/// Union of a k-median local optimum and the optimal k-tree depots (at most
/// 2k depots), then route.
SolveResult solve_bicriteria(const Instance& inst, const SolveOptions& options);

/// Dispatch on mode. kKmf / kKMedian / kKTree only route when Q is set and
/// every demand fits.
SolveResult solve(const Instance& inst, SolveMode mode,
                  const SolveOptions& options);

}  // namespace medforest
