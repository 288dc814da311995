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
#include <span>
#include <string_view>
#include <vector>

#include "medforest/instance.hpp"
#include "medforest/mst.hpp"

namespace medforest {

/// Phi(S) = sum_u q_u d(u, S) + rho * Tree(S), the tree measured in d or c.
struct Objective {
  double rho = 1.0;
  MetricKind tree_metric = MetricKind::kD;

  /// Throws unless rho >= 0 and, for kC, the instance carries c.
  void check(const Instance& inst) const;
};

/// Evaluates Phi repeatedly on one instance, caching the sorted edge order.
class PhiEvaluator {
 public:
  PhiEvaluator(const Instance& inst, const Objective& objective);

  double operator()(const DepotSet& s) const;
  double median(const DepotSet& s) const;
  double tree(const DepotSet& s) const;

  const Instance& instance() const noexcept { return *inst_; }
  const Objective& objective() const noexcept { return objective_; }

 private:
  const Instance* inst_;
  Objective objective_;
  EdgeOrder order_;
};

double phi(const Instance& inst, const Objective& objective, const DepotSet& s);

/// The (D, A) swap S - D + A.
struct SwapMove {
  std::vector<Vertex> drop;
  std::vector<Vertex> add;

  DepotSet apply(const DepotSet& s) const;
  friend bool operator==(const SwapMove&, const SwapMove&) = default;
};

/// Lists every (D, A) with |D| = |A| = s for s = 1..t in lexicographic order:
/// by size, then D, then A.
class SwapEnumerator {
 public:
  SwapEnumerator(const DepotSet& s, std::size_t n, std::size_t t);

  /// Writes the next move; false once exhausted.
  bool next(SwapMove& move);

  /// sum_s C(|S|, s) * C(n - |S|, s).
  static std::uint64_t count(std::size_t depot_count, std::size_t n,
                             std::size_t t);

 private:
  bool start_size(std::size_t size);

  std::vector<Vertex> inside_;
  std::vector<Vertex> outside_;
  std::size_t max_size_;
  std::size_t size_ = 0;
  std::vector<std::size_t> drop_idx_;
  std::vector<std::size_t> add_idx_;
  bool fresh_ = true;
};

std::vector<SwapMove> enumerate_swaps(const DepotSet& s, std::size_t n,
                                      std::size_t t);

enum class Termination { kLocalOptimum, kIterationCap, kZeroObjective };
std::string_view to_string(Termination t);

struct AcceptedMove {
  std::size_t iteration = 0;
  SwapMove move;
  double phi_before = 0.0;
  double phi_after = 0.0;
};

struct SearchTrace {
  DepotSet initial;
  std::optional<std::uint64_t> seed;  // set for random initialization
  std::vector<AcceptedMove> moves;
  std::size_t iterations = 0;
  std::size_t max_iters = 0;
  std::uint64_t evaluations = 0;
  Termination termination = Termination::kLocalOptimum;
};

struct SearchOptions {
  std::size_t k = 1;
  std::size_t t = 2;
  double delta = 1e-7;
  std::optional<DepotSet> init;  // random k-subset from `seed` otherwise
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_iters;
  unsigned threads = 1;
};

struct SearchResult {
  DepotSet depots;
  double phi = 0.0;
  SearchTrace trace;
};

/// First-improvement t-swap local search. A move is taken only when
/// Phi_new * (1 + delta) <= Phi_old and Phi_new < Phi_old.
SearchResult local_search(const Instance& inst, const Objective& objective,
                          const SearchOptions& options);

/// Default iteration bound: ceil(ln(Phi_init / Phi_floor) / ln(1 + delta)),
/// where Phi_floor lower-bounds every positive Phi, clipped by the hard cap
/// 10 n k ln(n + 1) / delta.
std::size_t default_max_iters(const Instance& inst, const Objective& objective,
                              std::size_t k, double delta, double phi_init);

struct LocalOptimality {
  bool local_optimum = true;
  std::optional<SwapMove> improving;  // first strictly improving move
  double phi = 0.0;
  std::optional<double> improved_phi;
  std::uint64_t moves_checked = 0;
};

/// Exact check (no delta): true iff no swap of size <= t lowers Phi.
LocalOptimality is_local_opt(const Instance& inst, const Objective& objective,
                             const DepotSet& s, std::size_t t,
                             unsigned threads = 1);

}  // namespace medforest
