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

#include <vector>

#include "medforest/instance.hpp"
#include "medforest/metric.hpp"

namespace medforest {

/// One vehicle trip: depot -> stops... -> depot, load <= Q.
struct Trip {
  Vertex depot = 0;
  std::vector<Vertex> stops;
  double load = 0.0;
  double length = 0.0;
};

struct RoutePlan {
  DepotSet depots;
  std::vector<Trip> trips;  // depots ascending, then construction order
  double total_cost = 0.0;
};

/// max(Flow(S), Tree(S)): a lower bound on any routing that uses depots S.
double lower_bound(const Instance& inst, const DepotSet& s);

/// 2 Flow(S) + 2 Tree(S), the guaranteed ceiling on build_routes.
double routing_upper_bound(const Instance& inst, const DepotSet& s);

/// Unsplit-delivery routes with total cost <= 2 Flow(S) + 2 Tree(S).
///
/// Each contracted-MST component is partitioned bottom-up into customer
/// groups whose loads lie in (Q/2, Q], plus at most one lighter group that
/// hangs off the component's own depot. Each heavy group is served from its
/// nearest depot through its nearest member, visiting the rest in the
/// component's preorder; the light group is toured directly from the root.
/// Every tree edge is walked by at most one group, so tour parts sum to at
/// most 2 Tree(S) and the connectors of heavy groups to at most 2 Flow(S).
///
/// Throws Error(kInfeasible) if some q_u > Q, Error(kInternal) if the bound
/// check fails.
RoutePlan build_routes(const Instance& inst, const DepotSet& s);

/// depot -> stops -> depot under d.
double trip_length(const Instance& inst, Vertex depot,
                   const std::vector<Vertex>& stops);

struct PlanValidation {
  ValidationReport report;
  double cost = 0.0;         // recomputed from the instance
  double lower_bound = 0.0;  // max(Flow, Tree) of the plan's depots
  double upper_bound = 0.0;  // 2 Flow + 2 Tree
  double ratio = 0.0;        // cost / lower_bound (0 when the bound is 0)

  bool valid() const noexcept { return report.valid(); }
};

/// Coverage, capacity, depot membership and arithmetic checks. Never throws.
PlanValidation validate_plan(const Instance& inst, const RoutePlan& plan);

}  // namespace medforest
