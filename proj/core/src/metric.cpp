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

#include "medforest/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "medforest/error.hpp"
#include "medforest/mst.hpp"

namespace medforest {
namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

class IssueSink {
 public:
  IssueSink(ValidationReport& report, std::size_t cap)
      : report_(report), cap_(cap) {}

  ~IssueSink() {
    for (const auto& [code, dropped] : overflow_) {
      report_.issues.push_back(
          {severity_[code], code,
           std::to_string(dropped) + " further '" + code + "' issues omitted",
           {}});
    }
  }

  void add(ValidationIssue::Severity severity, const std::string& code,
           std::string message, std::vector<Vertex> vertices = {}) {
    severity_[code] = severity;
    if (++count_[code] > cap_) {
      ++overflow_[code];
      return;
    }
    report_.issues.push_back(
        {severity, code, std::move(message), std::move(vertices)});
  }

  void error(const std::string& code, std::string message,
             std::vector<Vertex> vertices = {}) {
    add(ValidationIssue::Severity::kError, code, std::move(message),
        std::move(vertices));
  }

 private:
  ValidationReport& report_;
  std::size_t cap_;
  std::map<std::string, std::size_t> count_;
  std::map<std::string, std::size_t> overflow_;
  std::map<std::string, ValidationIssue::Severity> severity_;
};

void validate_metric(const Instance& inst, const DistanceMatrix& m,
                     std::string_view name, IssueSink& sink) {
  const std::size_t n = inst.size();
  const std::string tag(name);
  if (m.size() != n) {
    sink.error("dimension", "metric " + tag + " is " + std::to_string(m.size()) +
                                "x" + std::to_string(m.size()) + ", expected " +
                                std::to_string(n));
    return;
  }
  std::size_t zero_pairs = 0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      const auto ui = static_cast<Vertex>(i), uj = static_cast<Vertex>(j);
      if (!std::isfinite(v)) {
        sink.error("non_finite", tag + "(" + inst.label(ui) + "," +
                                     inst.label(uj) + ") is not finite",
                   {ui, uj});
        finite = false;
        continue;
      }
      if (i == j) {
        if (std::abs(v) > kMetricTolerance) {
          sink.error("diagonal", tag + "(" + inst.label(ui) + "," +
                                     inst.label(ui) + ") = " + fmt(v) +
                                     " is not zero",
                     {ui});
        }
        continue;
      }
      if (v < -kMetricTolerance) {
        sink.error("negative", tag + "(" + inst.label(ui) + "," +
                                   inst.label(uj) + ") = " + fmt(v) +
                                   " is negative",
                   {ui, uj});
      }
      if (i < j) {
        if (std::abs(v - m(j, i)) > kMetricTolerance) {
          sink.error("asymmetric", tag + "(" + inst.label(ui) + "," +
                                       inst.label(uj) + ") = " + fmt(v) +
                                       " but " + tag + "(" + inst.label(uj) +
                                       "," + inst.label(ui) + ") = " +
                                       fmt(m(j, i)),
                     {ui, uj});
        }
        if (v == 0.0) ++zero_pairs;
      }
    }
  }
  if (!finite) return;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || b == c) continue;
        const double via = m(a, b) + m(b, c);
        if (m(a, c) > via + kMetricTolerance) {
          const auto va = static_cast<Vertex>(a), vb = static_cast<Vertex>(b),
                     vc = static_cast<Vertex>(c);
          sink.error("triangle",
                     "triangle inequality fails for (" + inst.label(va) + "," +
                         inst.label(vb) + "," + inst.label(vc) + "): " + tag +
                         "(" + inst.label(va) + "," + inst.label(vc) +
                         ") = " + fmt(m(a, c)) + " > " + fmt(via),
                     {va, vb, vc});
          break;
        }
      }
    }
  }
  if (zero_pairs > 0) {
    sink.add(ValidationIssue::Severity::kInfo, "pseudometric",
             "metric " + tag + " has " + std::to_string(zero_pairs) +
                 " zero-distance pairs of distinct vertices");
  }
}

void require_depots(const Instance& inst, const DepotSet& s) {
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty depot set");
  s.check(inst.size());
}

}  // namespace

bool ValidationReport::valid() const noexcept { return error_count() == 0; }

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(), [](const ValidationIssue& i) {
        return i.severity == ValidationIssue::Severity::kError;
      }));
}

bool ValidationReport::has(std::string_view code) const noexcept {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

ValidationReport validate_instance(const Instance& inst,
                                   const ValidationOptions& options) {
  ValidationReport report;
  {
    IssueSink sink(report, options.max_issues_per_code);
    const std::size_t n = inst.size();
    if (n == 0) sink.error("empty", "instance has no vertices");
    if (inst.demand.size() != n) {
      sink.error("dimension", "demand vector has " +
                                  std::to_string(inst.demand.size()) +
                                  " entries, expected " + std::to_string(n));
    }
    if (!inst.labels.empty() && inst.labels.size() != n) {
      sink.error("dimension", "label list has " +
                                  std::to_string(inst.labels.size()) +
                                  " entries, expected " + std::to_string(n));
    }
    if (inst.k < 1 || inst.k > n) {
      sink.error("budget", "depot budget k = " + std::to_string(inst.k) +
                               " outside [1, " + std::to_string(n) + "]");
    }
    if (inst.capacity && !(*inst.capacity > 0.0 && std::isfinite(*inst.capacity))) {
      sink.error("capacity", "capacity Q = " + fmt(*inst.capacity) +
                                 " must be positive");
    }
    for (std::size_t u = 0; u < inst.demand.size(); ++u) {
      const double q = inst.demand[u];
      const auto v = static_cast<Vertex>(u);
      if (!std::isfinite(q) || q < 0.0) {
        sink.error("demand", "demand of " + inst.label(v) + " is " + fmt(q),
                   {v});
      } else if (options.check_unsplit && inst.capacity &&
                 q > *inst.capacity) {
        sink.error("unsplit", "demand of " + inst.label(v) + " is " + fmt(q) +
                                  " > Q = " + fmt(*inst.capacity),
                   {v});
      }
    }
    validate_metric(inst, inst.d, "d", sink);
    if (inst.c) validate_metric(inst, *inst.c, "c", sink);
  }
  return report;
}

double dist_to_set(const Instance& inst, Vertex u, const DepotSet& s,
                   MetricKind which) {
  require_depots(inst, s);
  const auto row = inst.metric(which).row(u);
  double best = std::numeric_limits<double>::infinity();
  for (Vertex w : s) best = std::min(best, row[w]);
  return best;
}

double med_cost(const Instance& inst, const DepotSet& s) {
  require_depots(inst, s);
  double total = 0.0;
  for (std::size_t u = 0; u < inst.size(); ++u) {
    if (inst.demand[u] == 0.0) continue;
    const auto row = inst.d.row(u);
    double best = std::numeric_limits<double>::infinity();
    for (Vertex w : s) best = std::min(best, row[w]);
    total += inst.demand[u] * best;
  }
  return total;
}

double flow_from_med(double med, double capacity) {
  return (2.0 / capacity) * med;
}

double flow_cost(const Instance& inst, const DepotSet& s) {
  return flow_from_med(med_cost(inst, s), inst.require_capacity());
}

ConsistencyResult consistency_check(const Instance& inst) {
  if (!inst.c) {
    throw Error(ErrorCode::kInvalidArgument,
                "uniform instance: no secondary metric c");
  }
  const std::size_t n = inst.size();
  const DistanceMatrix& c = *inst.c;
  std::vector<EdgePair> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  std::stable_sort(edges.begin(), edges.end(),
                   [&](const EdgePair& x, const EdgePair& y) {
                     return inst.d(x.a, x.b) < inst.d(y.a, y.b);
                   });

  ConsistencyResult result;
  // Largest c over all edges with strictly smaller d than the current group.
  std::optional<EdgePair> heaviest;
  std::optional<EdgePair> group_heaviest;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgePair& f = edges[i];
    if (i > 0 && inst.d(f.a, f.b) != inst.d(edges[i - 1].a, edges[i - 1].b)) {
      if (group_heaviest &&
          (!heaviest || c(group_heaviest->a, group_heaviest->b) >
                            c(heaviest->a, heaviest->b))) {
        heaviest = group_heaviest;
      }
      group_heaviest.reset();
    }
    if (heaviest && c(heaviest->a, heaviest->b) > c(f.a, f.b)) {
      result.consistent = false;
      result.witness = std::make_pair(*heaviest, f);
      return result;
    }
    if (!group_heaviest ||
        c(f.a, f.b) > c(group_heaviest->a, group_heaviest->b)) {
      group_heaviest = f;
    }
  }
  return result;
}

ObjectiveReport objective_report(const Instance& inst, const DepotSet& s,
                                 double rho, MetricKind tree_metric) {
  ObjectiveReport r;
  r.med = med_cost(inst, s);
  if (inst.capacity) r.flow = flow_from_med(r.med, *inst.capacity);
  r.tree_d = contracted_mst(inst, s, MetricKind::kD).cost;
  if (inst.c) r.tree_c = contracted_mst(inst, s, MetricKind::kC).cost;
  r.rho = rho;
  r.tree_metric = tree_metric;
  const double tree =
      (tree_metric == MetricKind::kC && r.tree_c) ? *r.tree_c : r.tree_d;
  r.phi = r.med + rho * tree;
  return r;
}

}  // namespace medforest
