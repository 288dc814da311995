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

#include "medforest/mst.hpp"

#include <algorithm>
#include <numeric>

#include "medforest/error.hpp"

namespace medforest {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

std::vector<TreeEdge> sorted_edges(const DistanceMatrix& metric,
                                   std::span<const Vertex> vertices) {
  std::vector<TreeEdge> edges;
  edges.reserve(vertices.size() * (vertices.size() - 1) / 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      Vertex a = vertices[i], b = vertices[j];
      if (a > b) std::swap(a, b);
      edges.push_back({a, b, metric(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const TreeEdge& x, const TreeEdge& y) {
    if (x.length != y.length) return x.length < y.length;
    if (x.u != y.u) return x.u < y.u;
    return x.v < y.v;
  });
  return edges;
}

std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

void require_depots(const DepotSet& s, std::size_t n) {
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty depot set");
  s.check(n);
}

// Kruskal with every depot pre-merged into one union-find class. `visit` sees
// each accepted edge in order.
template <typename Visit>
double contracted_kruskal(const EdgeOrder& order, const DepotSet& s,
                          Visit&& visit) {
  const std::size_t n = order.vertex_count();
  require_depots(s, n);
  UnionFind uf(n);
  const Vertex root = *s.begin();
  for (Vertex f : s) uf.unite(root, f);
  const std::size_t needed = n - s.size();
  std::size_t accepted = 0;
  double cost = 0.0;
  for (const TreeEdge& e : order.edges()) {
    if (accepted == needed) break;
    if (uf.unite(e.u, e.v)) {
      cost += e.length;
      ++accepted;
      visit(e);
    }
  }
  return cost;
}

// Neighbor lists ordered by (edge length, index), so traversal order depends
// on the geometry and only falls back to labels on exact ties.
std::vector<std::vector<Vertex>> adjacency(std::size_t n,
                                           const std::vector<TreeEdge>& edges) {
  std::vector<std::vector<std::pair<double, Vertex>>> weighted(n);
  for (const TreeEdge& e : edges) {
    weighted[e.u].emplace_back(e.length, e.v);
    weighted[e.v].emplace_back(e.length, e.u);
  }
  std::vector<std::vector<Vertex>> adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(weighted[v].begin(), weighted[v].end());
    for (const auto& [length, w] : weighted[v]) adj[v].push_back(w);
  }
  return adj;
}

}  // namespace

EdgeOrder::EdgeOrder(const DistanceMatrix& metric)
    : n_(metric.size()), edges_(sorted_edges(metric, iota_vertices(n_))) {}

SpanningTree mst(const DistanceMatrix& metric, std::span<const Vertex> vertices) {
  std::vector<Vertex> all;
  if (vertices.empty()) {
    all = iota_vertices(metric.size());
    vertices = all;
  }
  SpanningTree tree;
  if (vertices.size() <= 1) return tree;
  const auto edges = sorted_edges(metric, vertices);
  UnionFind uf(metric.size());
  for (const TreeEdge& e : edges) {
    if (tree.edges.size() + 1 == vertices.size()) break;
    if (uf.unite(e.u, e.v)) {
      tree.edges.push_back(e);
      tree.cost += e.length;
    }
  }
  return tree;
}

ContractedTree contracted_mst(const Instance& inst, const DepotSet& s,
                              MetricKind which) {
  require_depots(s, inst.size());
  return contracted_mst(EdgeOrder(inst.metric(which)), s);
}

ContractedTree contracted_mst(const EdgeOrder& order, const DepotSet& s) {
  ContractedTree tree;
  tree.depots = s;
  tree.cost = contracted_kruskal(
      order, s, [&](const TreeEdge& e) { tree.edges.push_back(e); });

  const std::size_t n = order.vertex_count();
  tree.attachment.assign(n, n);
  const auto adj = adjacency(n, tree.edges);
  std::vector<Vertex> stack;
  for (Vertex f : s) {
    tree.attachment[f] = f;
    stack.push_back(f);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : adj[x]) {
        if (tree.attachment[y] == n) {
          tree.attachment[y] = f;
          stack.push_back(y);
        }
      }
    }
  }
  return tree;
}

double contracted_mst_cost(const EdgeOrder& order, const DepotSet& s) {
  return contracted_kruskal(order, s, [](const TreeEdge&) {});
}

KTreeResult ktree_opt(const Instance& inst, std::size_t k, MetricKind which) {
  const std::size_t n = inst.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " outside [1, " +
                    std::to_string(n) + "]");
  }
  const SpanningTree full = mst(inst.metric(which));
  // Acceptance order is (length, u, v) ascending, so the last k-1 accepted
  // edges are the heaviest.
  const std::size_t keep = full.edges.size() - (k - 1);
  UnionFind uf(n);
  KTreeResult result;
  for (std::size_t i = 0; i < keep; ++i) {
    uf.unite(full.edges[i].u, full.edges[i].v);
    result.forest_cost += full.edges[i].length;
  }
  std::vector<Vertex> reps;
  std::vector<bool> seen(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = uf.find(v);
    if (!seen[r]) {
      seen[r] = true;
      reps.push_back(static_cast<Vertex>(v));
    }
  }
  result.depots = DepotSet(std::move(reps));
  return result;
}

std::vector<Vertex> euler_tour(const ContractedTree& tree, Vertex f) {
  if (!tree.depots.contains(f)) {
    throw Error(ErrorCode::kInvalidArgument,
                "vertex " + std::to_string(f) + " is not a depot of the tree");
  }
  const std::size_t n = tree.vertex_count();
  const auto adj = adjacency(n, tree.edges);
  std::vector<Vertex> order;
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{f};
  seen[f] = true;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    order.push_back(x);
    // Push in reverse so the shortest child edge is visited first.
    for (auto it = adj[x].rbegin(); it != adj[x].rend(); ++it) {
      if (!seen[*it]) {
        seen[*it] = true;
        stack.push_back(*it);
      }
    }
  }
  return order;
}

double closed_walk_length(const DistanceMatrix& metric,
                          std::span<const Vertex> seq) {
  if (seq.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    total += metric(seq[i], seq[i + 1]);
  return total + metric(seq.back(), seq.front());
}

}  // namespace medforest
