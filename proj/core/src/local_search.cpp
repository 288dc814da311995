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

#include "medforest/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "medforest/error.hpp"
#include "medforest/metric.hpp"
#include "medforest/random.hpp"
#include "parallel.hpp"

namespace medforest {
namespace {

constexpr std::size_t kMoveBlock = 4096;

// Advances idx to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

void first_combination(std::vector<std::size_t>& idx, std::size_t k) {
  idx.resize(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Scans swaps of `s` in enumeration order, `kMoveBlock` at a time, and
// returns the first one whose neighbour satisfies `accept`, together with the
// number of moves a sequential scan would have evaluated.
template <typename Accept>
std::pair<std::optional<SwapMove>, std::uint64_t> first_accepted_move(
    const DepotSet& s, std::size_t n, std::size_t t, unsigned threads,
    Accept&& accept) {
  SwapEnumerator moves(s, n, t);
  std::vector<SwapMove> block;
  std::uint64_t scanned = 0;
  while (true) {
    block.clear();
    SwapMove m;
    while (block.size() < kMoveBlock && moves.next(m)) block.push_back(m);
    if (block.empty()) return {std::nullopt, scanned};
    const auto hit = detail::first_index_where(
        block.size(), threads,
        [&](std::uint64_t i) { return accept(block[i].apply(s)); });
    if (hit < block.size()) {
      return {std::move(block[hit]), scanned + hit + 1};
    }
    scanned += block.size();
  }
}

}  // namespace

void Objective::check(const Instance& inst) const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kInvalidArgument, "rho must be finite and >= 0");
  }
  if (tree_metric == MetricKind::kC && !inst.c) {
    throw Error(ErrorCode::kInvalidArgument,
                "tree metric c requested but the instance has no c");
  }
}

PhiEvaluator::PhiEvaluator(const Instance& inst, const Objective& objective)
    : inst_(&inst), objective_(objective) {
  objective_.check(inst);
  if (objective_.rho != 0.0) order_ = EdgeOrder(inst.metric(objective_.tree_metric));
}

double PhiEvaluator::median(const DepotSet& s) const {
  return med_cost(*inst_, s);
}

double PhiEvaluator::tree(const DepotSet& s) const {
  if (order_.vertex_count() == 0) {
    return contracted_mst(*inst_, s, objective_.tree_metric).cost;
  }
  return contracted_mst_cost(order_, s);
}

double PhiEvaluator::operator()(const DepotSet& s) const {
  const double med = median(s);
  if (objective_.rho == 0.0) return med;
  return med + objective_.rho * contracted_mst_cost(order_, s);
}

double phi(const Instance& inst, const Objective& objective, const DepotSet& s) {
  return PhiEvaluator(inst, objective)(s);
}

DepotSet SwapMove::apply(const DepotSet& s) const {
  std::vector<Vertex> next;
  next.reserve(s.size());
  for (Vertex v : s)
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) next.push_back(v);
  next.insert(next.end(), add.begin(), add.end());
  return DepotSet(std::move(next));
}

SwapEnumerator::SwapEnumerator(const DepotSet& s, std::size_t n, std::size_t t)
    : inside_(s.begin(), s.end()) {
  for (std::size_t v = 0; v < n; ++v)
    if (!s.contains(static_cast<Vertex>(v))) outside_.push_back(static_cast<Vertex>(v));
  max_size_ = std::min({t, inside_.size(), outside_.size()});
}

bool SwapEnumerator::start_size(std::size_t size) {
  if (size == 0 || size > max_size_) return false;
  size_ = size;
  first_combination(drop_idx_, size);
  first_combination(add_idx_, size);
  return true;
}

bool SwapEnumerator::next(SwapMove& move) {
  if (fresh_) {
    fresh_ = false;
    if (!start_size(1)) return false;
  } else if (size_ == 0) {
    return false;
  } else if (!next_combination(add_idx_, outside_.size())) {
    first_combination(add_idx_, size_);
    if (!next_combination(drop_idx_, inside_.size())) {
      if (!start_size(size_ + 1)) {
        size_ = 0;
        return false;
      }
    }
  }
  move.drop.resize(size_);
  move.add.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    move.drop[i] = inside_[drop_idx_[i]];
    move.add[i] = outside_[add_idx_[i]];
  }
  return true;
}

std::uint64_t SwapEnumerator::count(std::size_t depot_count, std::size_t n,
                                    std::size_t t) {
  const std::size_t outside = n - depot_count;
  const std::size_t top = std::min({t, depot_count, outside});
  std::uint64_t total = 0;
  for (std::size_t s = 1; s <= top; ++s)
    total += choose(depot_count, s) * choose(outside, s);
  return total;
}

std::vector<SwapMove> enumerate_swaps(const DepotSet& s, std::size_t n,
                                      std::size_t t) {
  std::vector<SwapMove> out;
  SwapEnumerator e(s, n, t);
  SwapMove m;
  while (e.next(m)) out.push_back(m);
  return out;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kLocalOptimum: return "local_optimum";
    case Termination::kIterationCap: return "iteration_cap";
    case Termination::kZeroObjective: return "zero_objective";
  }
  return "unknown";
}

std::size_t default_max_iters(const Instance& inst, const Objective& objective,
                              std::size_t k, double delta, double phi_init) {
  const std::size_t n = inst.size();
  const double cap_real = 10.0 * static_cast<double>(n) *
                          static_cast<double>(k) *
                          std::log(static_cast<double>(n) + 1.0) / delta;
  if (!(phi_init > 0.0)) return 0;

  // Any positive Phi is at least the smallest positive q_u d(u, v) or
  // rho * (smallest positive tree-metric entry).
  double floor = std::numeric_limits<double>::infinity();
  const DistanceMatrix& tree_metric = inst.metric(objective.tree_metric);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double med_term = inst.demand[u] * inst.d(u, v);
      if (med_term > 0.0) floor = std::min(floor, med_term);
      const double tree_term = objective.rho * tree_metric(u, v);
      if (tree_term > 0.0) floor = std::min(floor, tree_term);
    }
  }
  double bound = cap_real;
  if (std::isfinite(floor)) {
    const double steps =
        std::ceil(std::log(phi_init / floor) / std::log1p(delta));
    bound = std::min(bound, std::max(steps, 0.0));
  }
  constexpr double kMax = 1e18;
  return static_cast<std::size_t>(std::min(bound, kMax));
}

SearchResult local_search(const Instance& inst, const Objective& objective,
                          const SearchOptions& options) {
  const std::size_t n = inst.size();
  if (options.k < 1 || options.k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(options.k) + " outside [1, " +
                    std::to_string(n) + "]");
  }
  if (options.t < 1) throw Error(ErrorCode::kInvalidArgument, "t must be >= 1");
  if (!(options.delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must be > 0");
  }
  const PhiEvaluator eval(inst, objective);

  SearchResult result;
  SearchTrace& trace = result.trace;
  if (options.init) {
    options.init->check(n, options.k);
    trace.initial = *options.init;
  } else {
    SplitMix64 rng(options.seed);
    trace.initial = random_subset(n, options.k, rng);
    trace.seed = options.seed;
  }

  DepotSet current = trace.initial;
  double phi_current = eval(current);
  trace.max_iters = options.max_iters
                        ? *options.max_iters
                        : default_max_iters(inst, objective, options.k,
                                            options.delta, phi_current);
  const double factor = 1.0 + options.delta;

  while (true) {
    if (phi_current == 0.0) {
      trace.termination = Termination::kZeroObjective;
      break;
    }
    if (trace.iterations >= trace.max_iters) {
      trace.termination = Termination::kIterationCap;
      break;
    }
    auto [move, scanned] = first_accepted_move(
        current, n, options.t, options.threads, [&](const DepotSet& next) {
          const double candidate = eval(next);
          return candidate < phi_current && candidate * factor <= phi_current;
        });
    trace.evaluations += scanned;
    if (!move) {
      trace.termination = Termination::kLocalOptimum;
      break;
    }
    DepotSet next = move->apply(current);
    const double phi_next = eval(next);
    trace.moves.push_back(
        {trace.iterations, std::move(*move), phi_current, phi_next});
    ++trace.iterations;
    current = std::move(next);
    phi_current = phi_next;
  }
  result.depots = std::move(current);
  result.phi = phi_current;
  return result;
}

LocalOptimality is_local_opt(const Instance& inst, const Objective& objective,
                             const DepotSet& s, std::size_t t,
                             unsigned threads) {
  s.check(inst.size());
  const PhiEvaluator eval(inst, objective);
  LocalOptimality out;
  out.phi = eval(s);
  auto [move, scanned] = first_accepted_move(
      s, inst.size(), t, threads,
      [&](const DepotSet& next) { return eval(next) < out.phi; });
  out.moves_checked = scanned;
  if (move) {
    out.local_optimum = false;
    out.improved_phi = eval(move->apply(s));
    out.improving = std::move(move);
  }
  return out;
}

}  // namespace medforest
