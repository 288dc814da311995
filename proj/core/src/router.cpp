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

#include "medforest/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "medforest/error.hpp"
#include "medforest/mst.hpp"

namespace medforest {
namespace {

constexpr double kBoundSlack = 1e-9;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

struct Group {
  std::vector<Vertex> members;
  double load = 0.0;
  bool heavy = true;  // load > Q/2, or the lone residual of a component
};

// Bottom-up partition of one component. Pieces handed upward always weigh at
// most Q/2; a group closes as soon as its load passes Q/2, so closed groups
// weigh in (Q/2, Q]. The residual at the root becomes the single light group.
std::vector<Group> partition_component(const Instance& inst,
                                       const ContractedTree& tree, Vertex root,
                                       const std::vector<Vertex>& preorder,
                                       double capacity) {
  const double half = capacity / 2.0;
  const std::size_t n = inst.size();
  std::vector<Vertex> parent(n, root);
  {
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < preorder.size(); ++i) pos[preorder[i]] = i;
    for (const TreeEdge& e : tree.edges) {
      if (pos[e.u] == n || pos[e.v] == n) continue;
      if (pos[e.u] < pos[e.v]) parent[e.v] = e.u;
      else parent[e.u] = e.v;
    }
  }

  struct Residual {
    std::vector<Vertex> members;
    double load = 0.0;
  };
  std::vector<Residual> residual(n);
  // Children residuals arrive in reverse preorder; collect per parent and
  // replay in preorder (shortest child edge first).
  std::vector<std::vector<Vertex>> children(n);
  for (auto it = preorder.begin() + 1; it != preorder.end(); ++it)
    children[parent[*it]].push_back(*it);

  std::vector<Group> groups;
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const Vertex v = *it;
    Residual acc;
    auto take = [&](std::vector<Vertex> members, double load) {
      acc.members.insert(acc.members.end(), members.begin(), members.end());
      acc.load += load;
      if (acc.load > half) {
        groups.push_back({std::move(acc.members), acc.load, true});
        acc = Residual{};
      }
    };
    const double q = inst.demand[v];
    if (v != root && q > 0.0) {
      if (q > half) {
        groups.push_back({{v}, q, true});
      } else {
        take({v}, q);
      }
    }
    for (Vertex c : children[v]) {
      if (!residual[c].members.empty()) {
        take(std::move(residual[c].members), residual[c].load);
      }
    }
    residual[v] = std::move(acc);
  }
  if (!residual[root].members.empty()) {
    groups.push_back(
        {std::move(residual[root].members), residual[root].load, false});
  }
  return groups;
}

}  // namespace

double trip_length(const Instance& inst, Vertex depot,
                   const std::vector<Vertex>& stops) {
  if (stops.empty()) return 0.0;
  double total = inst.d(depot, stops.front());
  for (std::size_t i = 0; i + 1 < stops.size(); ++i)
    total += inst.d(stops[i], stops[i + 1]);
  return total + inst.d(stops.back(), depot);
}

double lower_bound(const Instance& inst, const DepotSet& s) {
  return std::max(flow_cost(inst, s), contracted_mst(inst, s).cost);
}

double routing_upper_bound(const Instance& inst, const DepotSet& s) {
  return 2.0 * flow_cost(inst, s) + 2.0 * contracted_mst(inst, s).cost;
}

RoutePlan build_routes(const Instance& inst, const DepotSet& s) {
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty depot set");
  s.check(inst.size());
  const double capacity = inst.require_capacity();
  for (std::size_t u = 0; u < inst.size(); ++u) {
    const double q = inst.demand[u];
    if (!(q >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative demand at " + inst.label(static_cast<Vertex>(u)));
    }
    if (q > capacity && !s.contains(static_cast<Vertex>(u))) {
      throw Error(ErrorCode::kInfeasible,
                  "unsplit infeasible: demand " + fmt(q) + " of " +
                      inst.label(static_cast<Vertex>(u)) + " exceeds Q = " +
                      fmt(capacity));
    }
  }

  const ContractedTree tree = contracted_mst(inst, s, MetricKind::kD);
  const std::size_t n = inst.size();

  RoutePlan plan;
  plan.depots = s;
  for (Vertex f : s) {
    const std::vector<Vertex> preorder = euler_tour(tree, f);
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < preorder.size(); ++i) pos[preorder[i]] = i;

    for (Group& g : partition_component(inst, tree, f, preorder, capacity)) {
      std::sort(g.members.begin(), g.members.end(),
                [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
      Trip trip;
      trip.load = g.load;
      if (!g.heavy) {
        trip.depot = f;
        trip.stops = std::move(g.members);
      } else {
        // Nearest (depot, member) pair; prefer the component's own depot,
        // then lower indices.
        Vertex best_depot = f;
        std::size_t best_member = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.members.size(); ++i) {
          for (Vertex depot : s) {
            const double dist = inst.d(depot, g.members[i]);
            const bool better =
                dist < best ||
                (dist == best && std::pair(depot != f, depot) <
                                     std::pair(best_depot != f, best_depot));
            if (better) {
              best = dist;
              best_depot = depot;
              best_member = i;
            }
          }
        }
        trip.depot = best_depot;
        std::rotate(g.members.begin(), g.members.begin() + best_member,
                    g.members.end());
        trip.stops = std::move(g.members);
      }
      trip.length = trip_length(inst, trip.depot, trip.stops);
      plan.trips.push_back(std::move(trip));
    }
  }
  std::stable_sort(plan.trips.begin(), plan.trips.end(),
                   [](const Trip& a, const Trip& b) { return a.depot < b.depot; });
  for (const Trip& t : plan.trips) plan.total_cost += t.length;

  const double bound = 2.0 * flow_cost(inst, s) + 2.0 * tree.cost;
  if (plan.total_cost > bound + kBoundSlack + 1e-12 * bound) {
    throw Error(ErrorCode::kInternal,
                "routing cost " + fmt(plan.total_cost) +
                    " exceeds 2 Flow + 2 Tree = " + fmt(bound));
  }
  return plan;
}

PlanValidation validate_plan(const Instance& inst, const RoutePlan& plan) {
  PlanValidation out;
  auto& issues = out.report.issues;
  auto error = [&](std::string code, std::string message,
                   std::vector<Vertex> vertices = {}) {
    issues.push_back({ValidationIssue::Severity::kError, std::move(code),
                      std::move(message), std::move(vertices)});
  };
  const std::size_t n = inst.size();

  bool depots_ok = !plan.depots.empty();
  if (!depots_ok) error("depots", "plan has no depots");
  for (Vertex f : plan.depots) {
    if (f >= n) {
      error("depots", "depot " + std::to_string(f) + " out of range", {f});
      depots_ok = false;
    }
  }
  if (!inst.capacity) error("capacity", "instance has no capacity Q");
  const double capacity =
      inst.capacity.value_or(std::numeric_limits<double>::infinity());

  std::vector<std::size_t> visits(n, 0);
  double total = 0.0;
  for (std::size_t t = 0; t < plan.trips.size(); ++t) {
    const Trip& trip = plan.trips[t];
    const std::string name = "trip " + std::to_string(t);
    if (trip.depot >= n || !plan.depots.contains(trip.depot)) {
      error("depot_membership",
            name + " starts at " + std::to_string(trip.depot) +
                ", which is not a plan depot",
            {trip.depot});
      continue;
    }
    if (trip.stops.empty()) {
      error("empty_trip", name + " has no stops");
      continue;
    }
    bool in_range = true;
    double load = 0.0;
    for (Vertex v : trip.stops) {
      if (v >= n) {
        error("stop_range", name + " visits unknown vertex " + std::to_string(v));
        in_range = false;
        continue;
      }
      if (plan.depots.contains(v)) {
        error("depot_stop", name + " lists depot " + inst.label(v) + " as a stop",
              {v});
      }
      ++visits[v];
      load += inst.demand[v];
    }
    if (!in_range) continue;
    if (std::abs(load - trip.load) > 1e-9 * std::max(1.0, load)) {
      error("load_arithmetic", name + " records load " + fmt(trip.load) +
                                   " but its stops sum to " + fmt(load));
    }
    if (load > capacity + 1e-9 * std::max(1.0, capacity)) {
      error("capacity", name + " carries " + fmt(load) + " > Q = " + fmt(capacity));
    }
    const double length = trip_length(inst, trip.depot, trip.stops);
    if (std::abs(length - trip.length) > 1e-9 * std::max(1.0, length)) {
      error("length_arithmetic", name + " records length " + fmt(trip.length) +
                                     " but recomputes to " + fmt(length));
    }
    total += length;
  }
  for (std::size_t u = 0; u < n; ++u) {
    const auto v = static_cast<Vertex>(u);
    if (inst.demand[u] <= 0.0 || plan.depots.contains(v)) continue;
    if (visits[u] == 0) {
      error("coverage_missing", "customer " + inst.label(v) + " is not served",
            {v});
    } else if (visits[u] > 1) {
      error("coverage_duplicate", "customer " + inst.label(v) + " is visited " +
                                      std::to_string(visits[u]) + " times",
            {v});
    }
  }
  if (std::abs(total - plan.total_cost) > 1e-9 * std::max(1.0, total)) {
    error("total_arithmetic", "plan records total " + fmt(plan.total_cost) +
                                  " but trips sum to " + fmt(total));
  }
  out.cost = total;
  if (depots_ok && inst.capacity) {
    const double flow = flow_cost(inst, plan.depots);
    const double tree = contracted_mst(inst, plan.depots).cost;
    out.lower_bound = std::max(flow, tree);
    out.upper_bound = 2.0 * flow + 2.0 * tree;
    out.ratio = out.lower_bound > 0.0 ? total / out.lower_bound : 0.0;
  }
  return out;
}

}  // namespace medforest
