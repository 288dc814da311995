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

#include <optional>
#include <string>
#include <vector>

#include "medforest/instance.hpp"

namespace medforest {

inline constexpr double kMetricTolerance = 1e-9;

struct ValidationIssue {
  enum class Severity { kInfo, kError };
  Severity severity = Severity::kError;
  std::string code;  // machine-readable tag, e.g. "triangle", "asymmetric"
  std::string message;
  std::vector<Vertex> vertices;  // witnesses, e.g. the triple (a, b, c)
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const noexcept;
  std::size_t error_count() const noexcept;
  /// True if any issue carries the given code.
  bool has(std::string_view code) const noexcept;
};

struct ValidationOptions {
  // Whether q_u <= Q is checked (only meaningful when Q is set).
  bool check_unsplit = true;
  // Per-code cap on listed issues; the overflow is summarized in one line.
  std::size_t max_issues_per_code = 64;
};

/// Reports every broken invariant of `inst`; never throws.
ValidationReport validate_instance(const Instance& inst,
                                   const ValidationOptions& options = {});

/// d(u, S) = min over w in S of metric(u, w).
double dist_to_set(const Instance& inst, Vertex u, const DepotSet& s,
                   MetricKind which = MetricKind::kD);

/// Med(S) = sum_u q_u * d(u, S).
double med_cost(const Instance& inst, const DepotSet& s);

/// Flow(S) = (2 / Q) * Med(S). Requires Q.
double flow_cost(const Instance& inst, const DepotSet& s);

/// Scaling used by flow_cost; exposed so callers can reuse a computed Med.
double flow_from_med(double med, double capacity);

struct EdgePair {
  Vertex a = 0, b = 0;  // a < b
};

struct ConsistencyResult {
  bool consistent = true;
  // Witness (e, f) with d_e < d_f and c_e > c_f when inconsistent.
  std::optional<std::pair<EdgePair, EdgePair>> witness;
};

/// Checks d_e <= d_f  =>  c_e <= c_f over all edge pairs. Pairs with
/// d_e == d_f impose no constraint. Requires the secondary metric.
ConsistencyResult consistency_check(const Instance& inst);

struct ObjectiveReport {
  double med = 0.0;
  std::optional<double> flow;    // needs Q
  double tree_d = 0.0;
  std::optional<double> tree_c;  // needs c
  double rho = 0.0;
  MetricKind tree_metric = MetricKind::kD;
  double phi = 0.0;  // med + rho * tree(tree_metric)
};

ObjectiveReport objective_report(const Instance& inst, const DepotSet& s,
                                 double rho,
                                 MetricKind tree_metric = MetricKind::kD);

}  // namespace medforest
