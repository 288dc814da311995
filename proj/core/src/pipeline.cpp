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

#include "medforest/pipeline.hpp"

#include <algorithm>

#include "medforest/error.hpp"
#include "medforest/mst.hpp"
#include "medforest/oracles.hpp"

namespace medforest {
namespace {

bool routable(const Instance& inst) {
  if (!inst.capacity) return false;
  return std::all_of(inst.demand.begin(), inst.demand.end(),
                     [&](double q) { return q <= *inst.capacity; });
}

void check_budget(const Instance& inst) {
  if (inst.k < 1 || inst.k > inst.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(inst.k) + " outside [1, " +
                    std::to_string(inst.size()) + "]");
  }
}

// Fills report, plan and bounds once `depots` and `objective` are set.
void finish(const Instance& inst, SolveResult& result, bool require_plan) {
  result.report = objective_report(inst, result.depots, result.objective.rho,
                                   result.objective.tree_metric);
  result.budget_factor = static_cast<double>(result.depots.size()) /
                         static_cast<double>(inst.k);
  if (!require_plan && !routable(inst)) return;

  result.plan = build_routes(inst, result.depots);
  result.lb = lower_bound(inst, result.depots);
  if (*result.lb > 0.0) result.ratio = result.plan->total_cost / *result.lb;
  if (inst.size() <= kExhaustiveBoundMaxN) {
    result.global_lb =
        brute_routing_lower_bound(inst, inst.k, result.params.threads).value;
    if (*result.global_lb > 0.0) {
      result.global_ratio = result.plan->total_cost / *result.global_lb;
    }
  }
}

SolveResult from_search(SolveMode mode, const SolveOptions& options,
                        const Objective& objective, SearchResult search) {
  SolveResult result;
  result.mode = mode;
  result.params = options;
  result.objective = objective;
  result.depots = std::move(search.depots);
  result.best_seed = search.trace.seed;
  result.trace = std::move(search.trace);
  return result;
}

}  // namespace

std::string_view to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kLocVrp: return "locvrp";
    case SolveMode::kKmf: return "kmf";
    case SolveMode::kKMedian: return "kmedian";
    case SolveMode::kKTree: return "ktree";
    case SolveMode::kBicriteria: return "bicriteria";
  }
  return "unknown";
}

SolveMode solve_mode_from_string(std::string_view name) {
  for (SolveMode m : {SolveMode::kLocVrp, SolveMode::kKmf, SolveMode::kKMedian,
                      SolveMode::kKTree, SolveMode::kBicriteria}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + std::string(name) + "'");
}

SearchResult multi_start_search(const Instance& inst, const Objective& objective,
                                std::size_t k, const SolveOptions& options) {
  if (options.restarts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  }
  std::optional<SearchResult> best;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    SearchOptions search;
    search.k = k;
    search.t = options.t;
    search.delta = options.delta;
    search.seed = options.seed + r;
    search.threads = options.threads;
    SearchResult run = local_search(inst, objective, search);
    if (!best || run.phi < best->phi) best = std::move(run);
  }
  return std::move(*best);
}

SearchResult locate_depots(const Instance& inst, const SolveOptions& options) {
  check_budget(inst);
  const Objective objective{inst.require_capacity() / 2.0, MetricKind::kD};
  return multi_start_search(inst, objective, inst.k, options);
}

SolveResult solve_klocvrp(const Instance& inst, const SolveOptions& options) {
  const Objective objective{inst.require_capacity() / 2.0, MetricKind::kD};
  SolveResult result = from_search(SolveMode::kLocVrp, options, objective,
                                   locate_depots(inst, options));
  finish(inst, result, true);
  return result;
}

SolveResult solve_bicriteria(const Instance& inst, const SolveOptions& options) {
  check_budget(inst);
  const double capacity = inst.require_capacity();
  SearchResult median =
      multi_start_search(inst, Objective{0.0, MetricKind::kD}, inst.k, options);
  DepotSet tree = ktree_opt(inst, inst.k, MetricKind::kD).depots;

  SolveResult result;
  result.mode = SolveMode::kBicriteria;
  result.params = options;
  result.objective = Objective{capacity / 2.0, MetricKind::kD};
  result.depots = median.depots.set_union(tree);
  result.median_depots = median.depots;
  result.tree_depots = std::move(tree);
  result.best_seed = median.trace.seed;
  result.trace = std::move(median.trace);
  finish(inst, result, true);
  return result;
}

SolveResult solve(const Instance& inst, SolveMode mode,
                  const SolveOptions& options) {
  switch (mode) {
    case SolveMode::kLocVrp:
      return solve_klocvrp(inst, options);
    case SolveMode::kBicriteria:
      return solve_bicriteria(inst, options);
    case SolveMode::kKmf:
    case SolveMode::kKMedian: {
      check_budget(inst);
      const Objective objective = mode == SolveMode::kKmf
                                      ? options.objective
                                      : Objective{0.0, MetricKind::kD};
      SolveResult result =
          from_search(mode, options, objective,
                      multi_start_search(inst, objective, inst.k, options));
      finish(inst, result, false);
      return result;
    }
    case SolveMode::kKTree: {
      check_budget(inst);
      SolveResult result;
      result.mode = mode;
      result.params = options;
      result.objective = Objective{1.0, options.objective.tree_metric};
      result.objective.check(inst);
      result.depots = ktree_opt(inst, inst.k, options.objective.tree_metric).depots;
      finish(inst, result, false);
      return result;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown solve mode");
}

}  // namespace medforest
