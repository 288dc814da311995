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

#include <span>
#include <vector>

#include "medforest/instance.hpp"

namespace medforest {

struct TreeEdge {
  Vertex u = 0, v = 0;  // u < v
  double length = 0.0;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

struct SpanningTree {
  std::vector<TreeEdge> edges;  // in Kruskal acceptance order
  double cost = 0.0;
};

/// Minimum spanning tree (contracted MST, MST(V/S)) of a depot set. Each
/// connected component of `edges` holds exactly one depot; `attachment[v]`
/// names it.
struct ContractedTree {
  DepotSet depots;
  std::vector<TreeEdge> edges;  // n - |S| edges, Kruskal acceptance order
  double cost = 0.0;            // sum of edges in acceptance order
  std::vector<Vertex> attachment;

  std::size_t vertex_count() const noexcept { return attachment.size(); }
};

/// All vertex pairs of a metric sorted by (length, min endpoint, max
/// endpoint). Build once per metric and reuse across many tree evaluations.
class EdgeOrder {
 public:
  EdgeOrder() = default;
  explicit EdgeOrder(const DistanceMatrix& metric);

  std::size_t vertex_count() const noexcept { return n_; }
  std::span<const TreeEdge> edges() const noexcept { return edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<TreeEdge> edges_;
};

/// Kruskal MST over the vertex subset `vertices` (all of V when empty).
SpanningTree mst(const DistanceMatrix& metric,
                 std::span<const Vertex> vertices = {});

/// Tree(S) with edges re-expanded onto concrete depots.
ContractedTree contracted_mst(const Instance& inst, const DepotSet& s,
                              MetricKind which = MetricKind::kD);
ContractedTree contracted_mst(const EdgeOrder& order, const DepotSet& s);

/// Cost-only variant; identical arithmetic to contracted_mst(order, s).cost.
double contracted_mst_cost(const EdgeOrder& order, const DepotSet& s);

/// The k-subset minimizing Tree(S): drop the k-1 heaviest MST edges and take
/// the lowest-indexed vertex of each remaining component.
struct KTreeResult {
  DepotSet depots;
  double forest_cost = 0.0;  // weight of the retained forest
};
KTreeResult ktree_opt(const Instance& inst, std::size_t k,
                      MetricKind which = MetricKind::kD);

/// Preorder (shortcut Euler tour) of depot f's component. Children are
/// visited by ascending edge length, ties by index.
std::vector<Vertex> euler_tour(const ContractedTree& tree, Vertex f);

/// Length of the closed walk seq[0] -> ... -> seq.back() -> seq[0].
double closed_walk_length(const DistanceMatrix& metric,
                          std::span<const Vertex> seq);

}  // namespace medforest
