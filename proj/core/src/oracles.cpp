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

#include "medforest/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "medforest/error.hpp"
#include "medforest/metric.hpp"
#include "medforest/mst.hpp"
#include "medforest/router.hpp"
#include "parallel.hpp"

namespace medforest {
namespace {

constexpr std::uint64_t kChunk = 2048;

bool within_tie(double value, double opt) {
  return value <= opt + kArgminTolerance * std::abs(opt);
}

// Lexicographic rank -> k-combination of {0..n-1}.
std::vector<Vertex> unrank_combination(std::size_t n, std::size_t k,
                                       std::uint64_t rank) {
  std::vector<Vertex> out;
  out.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t v = next; v < n; ++v) {
      const std::uint64_t block = binomial(n - v - 1, k - slot - 1);
      if (rank < block) {
        out.push_back(static_cast<Vertex>(v));
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return out;
}

bool advance(std::vector<Vertex>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

struct Scan {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, DepotSet>> ties;  // lexicographic order
  std::uint64_t scanned = 0;
};

void check_subset_guard(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " outside [1, " +
                    std::to_string(n) + "]");
  }
  const std::uint64_t total = binomial(n, k);
  if (total > kSubsetGuard) {
    throw Error(ErrorCode::kGuard,
                "exhaustive scan needs C(" + std::to_string(n) + "," +
                    std::to_string(k) + ") = " + std::to_string(total) +
                    " subsets, above the guard of " +
                    std::to_string(kSubsetGuard));
  }
}

// Evaluates every k-subset; chunk results merge as (min, union of ties).
template <typename Eval>
Scan scan_subsets(std::size_t n, std::size_t k, unsigned threads, Eval&& eval) {
  check_subset_guard(n, k);
  const std::uint64_t total = binomial(n, k);
  const std::size_t chunks =
      static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<Scan> partial(chunks);
  detail::parallel_chunks(chunks, threads, [&](std::size_t c) {
    Scan& local = partial[c];
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    std::vector<Vertex> idx = unrank_combination(n, k, begin);
    for (std::uint64_t r = begin; r < end; ++r) {
      DepotSet s(idx);
      const double value = eval(s);
      ++local.scanned;
      if (value < local.best) {
        local.best = value;
        std::erase_if(local.ties, [&](const auto& entry) {
          return !within_tie(entry.first, value);
        });
      }
      if (within_tie(value, local.best)) local.ties.emplace_back(value, std::move(s));
      if (r + 1 < end) advance(idx, n);
    }
  });
  Scan merged;
  for (const Scan& p : partial) {
    merged.best = std::min(merged.best, p.best);
    merged.scanned += p.scanned;
  }
  for (Scan& p : partial) {
    for (auto& entry : p.ties)
      if (within_tie(entry.first, merged.best)) merged.ties.push_back(std::move(entry));
  }
  return merged;
}

std::vector<DepotSet> sets_of(std::vector<std::pair<double, DepotSet>>& ties) {
  std::vector<DepotSet> out;
  out.reserve(ties.size());
  for (auto& entry : ties) out.push_back(std::move(entry.second));
  return out;
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kMedian: return "median";
    case ObjectiveKind::kKTree: return "ktree";
    case ObjectiveKind::kKmf: return "kmf";
  }
  return "unknown";
}

ObjectiveKind objective_kind_from_string(std::string_view name) {
  if (name == "median") return ObjectiveKind::kMedian;
  if (name == "ktree") return ObjectiveKind::kKTree;
  if (name == "kmf") return ObjectiveKind::kKmf;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown objective '" + std::string(name) + "'");
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (r > UINT64_MAX / factor) return UINT64_MAX;
    r = r * factor / i;
  }
  return r;
}

OracleResult brute_subset_opt(const Instance& inst, std::size_t k,
                              const OracleObjective& objective,
                              unsigned threads) {
  OracleResult result;
  result.objective = objective;
  result.k = k;
  Scan scan;
  switch (objective.kind) {
    case ObjectiveKind::kMedian:
      scan = scan_subsets(inst.size(), k, threads,
                          [&](const DepotSet& s) { return med_cost(inst, s); });
      break;
    case ObjectiveKind::kKTree: {
      objective.kmf.check(inst);
      const EdgeOrder order(inst.metric(objective.kmf.tree_metric));
      scan = scan_subsets(inst.size(), k, threads, [&](const DepotSet& s) {
        return contracted_mst_cost(order, s);
      });
      break;
    }
    case ObjectiveKind::kKmf: {
      const PhiEvaluator eval(inst, objective.kmf);
      scan = scan_subsets(inst.size(), k, threads, eval);
      break;
    }
  }
  result.opt_value = scan.best;
  result.argmins = sets_of(scan.ties);
  result.subsets_scanned = scan.scanned;
  return result;
}

RoutingLowerBound brute_routing_lower_bound(const Instance& inst, std::size_t k,
                                            unsigned threads) {
  const double capacity = inst.require_capacity();
  const EdgeOrder order(inst.d);
  auto eval = [&](const DepotSet& s) {
    return std::max(flow_from_med(med_cost(inst, s), capacity),
                    contracted_mst_cost(order, s));
  };
  Scan scan = scan_subsets(inst.size(), k, threads, eval);
  RoutingLowerBound out;
  out.value = scan.best;
  out.argmin = scan.ties.front().second;
  out.subsets_scanned = scan.scanned;
  return out;
}

double brute_cvrp(const Instance& inst, const DepotSet& s, std::size_t limit) {
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty depot set");
  s.check(inst.size());
  const double capacity = inst.require_capacity();
  std::vector<Vertex> customers;
  for (std::size_t u = 0; u < inst.size(); ++u) {
    const auto v = static_cast<Vertex>(u);
    if (inst.demand[u] > 0.0 && !s.contains(v)) customers.push_back(v);
  }
  const std::size_t m = customers.size();
  if (m > limit) {
    throw Error(ErrorCode::kGuard, std::to_string(m) +
                                       " customers exceed the exact routing "
                                       "guard of " +
                                       std::to_string(limit));
  }
  if (m == 0) return 0.0;
  for (Vertex v : customers) {
    if (inst.demand[v] > capacity) {
      throw Error(ErrorCode::kInfeasible,
                  "unsplit infeasible: demand of " + inst.label(v) +
                      " exceeds Q");
    }
  }

  const std::size_t full = std::size_t{1} << m;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Cheapest closed tour through each customer subset from any depot.
  std::vector<double> trip(full, kInf);
  std::vector<double> path(full * m);
  for (Vertex depot : s) {
    std::fill(path.begin(), path.end(), kInf);
    for (std::size_t j = 0; j < m; ++j)
      path[(std::size_t{1} << j) * m + j] = inst.d(depot, customers[j]);
    for (std::size_t mask = 1; mask < full; ++mask) {
      double tour = kInf;
      for (std::size_t j = 0; j < m; ++j) {
        if (!(mask >> j & 1)) continue;
        const double here = path[mask * m + j];
        if (here == kInf) continue;
        tour = std::min(tour, here + inst.d(customers[j], depot));
        for (std::size_t x = 0; x < m; ++x) {
          if (mask >> x & 1) continue;
          double& slot = path[(mask | std::size_t{1} << x) * m + x];
          slot = std::min(slot, here + inst.d(customers[j], customers[x]));
        }
      }
      trip[mask] = std::min(trip[mask], tour);
    }
  }

  // Optimal set partition into capacity-feasible trips.
  std::vector<double> load(full, 0.0);
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    load[mask] = load[mask & (mask - 1)] + inst.demand[customers[low]];
  }
  const double cap = capacity * (1.0 + 1e-12);
  std::vector<double> best(full, kInf);
  best[0] = 0.0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    for (std::size_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || load[sub] > cap) continue;
      best[mask] = std::min(best[mask], trip[sub] + best[mask ^ sub]);
    }
  }
  return best[full - 1];
}

std::size_t symmetric_difference_size(const DepotSet& a, const DepotSet& b) {
  std::vector<Vertex> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return diff.size();
}

bool DivergenceReport::pairwise_disjoint() const noexcept {
  return std::none_of(pairs.begin(), pairs.end(),
                      [](const FamilyComparison& p) { return p.intersect; });
}

DivergenceReport divergence_report(const Instance& inst, std::size_t k,
                                   double rho, MetricKind tree_metric,
                                   unsigned threads) {
  DivergenceReport report;
  report.median = brute_subset_opt(inst, k, OracleObjective::median(), threads);
  report.ktree =
      brute_subset_opt(inst, k, OracleObjective::ktree(tree_metric), threads);
  report.kmf = brute_subset_opt(
      inst, k, OracleObjective::kmf_with(rho, tree_metric), threads);
  const OracleResult* families[] = {&report.median, &report.ktree, &report.kmf};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      FamilyComparison cmp;
      cmp.first = families[i]->objective.kind;
      cmp.second = families[j]->objective.kind;
      cmp.min_symmetric_difference = std::numeric_limits<std::size_t>::max();
      for (const DepotSet& a : families[i]->argmins) {
        for (const DepotSet& b : families[j]->argmins) {
          const std::size_t diff = symmetric_difference_size(a, b);
          cmp.min_symmetric_difference = std::min(cmp.min_symmetric_difference, diff);
        }
      }
      cmp.intersect = cmp.min_symmetric_difference == 0;
      report.pairs.push_back(cmp);
    }
  }
  return report;
}

}  // namespace medforest
