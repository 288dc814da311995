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

#include "medforest/serialize.hpp"

#include <cmath>
#include <sstream>

#include "medforest/error.hpp"
#include "medforest/instance_kit.hpp"

namespace medforest {
namespace {

Json matrix_json(const DistanceMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto r = m.row(i);
    rows.push_back(Json(std::vector<double>(r.begin(), r.end())));
  }
  return Json{{"kind", "matrix"}, {"rows", std::move(rows)}};
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

DistanceMatrix matrix_from_json(const Json& j, std::size_t n,
                                const std::string& field) {
  if (!j.is_object() || !j.contains("kind")) {
    parse_fail("'" + field + "' must be an object with a 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "matrix") {
    const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (rows.size() != n) {
      parse_fail("'" + field + "' has " + std::to_string(rows.size()) +
                 " rows, expected n = " + std::to_string(n));
    }
    try {
      return DistanceMatrix::from_rows(rows);
    } catch (const Error& e) {
      parse_fail("'" + field + "': " + e.what());
    }
  }
  if (kind == "euclidean") {
    const auto points = j.at("points").get<std::vector<std::vector<double>>>();
    if (points.size() != n) {
      parse_fail("'" + field + "' has " + std::to_string(points.size()) +
                 " points, expected n = " + std::to_string(n));
    }
    std::vector<std::array<double, 2>> xy;
    for (const auto& p : points) {
      if (p.size() != 2) parse_fail("'" + field + "' points must be [x, y]");
      xy.push_back({p[0], p[1]});
    }
    return euclidean_matrix(xy);
  }
  parse_fail("'" + field + "' has unknown kind '" + kind + "'");
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.size();
  j["k"] = inst.k;
  j["Q"] = optional_number(inst.capacity);
  j["q"] = inst.demand;
  if (!inst.labels.empty()) j["labels"] = inst.labels;
  j["d"] = matrix_json(inst.d);
  if (inst.c) j["c"] = matrix_json(*inst.c);
  if (!inst.annotations.empty()) {
    Json notes = Json::object();
    for (const auto& [key, value] : inst.annotations) notes[key] = value;
    j["annotations"] = std::move(notes);
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    if (!j.is_object()) parse_fail("instance must be a JSON object");
    Instance inst;
    const auto n = j.at("n").get<std::size_t>();
    inst.k = j.at("k").get<std::size_t>();
    if (j.contains("Q") && !j.at("Q").is_null()) inst.capacity = j.at("Q").get<double>();
    inst.demand = j.at("q").get<std::vector<double>>();
    if (inst.demand.size() != n) {
      parse_fail("'q' has " + std::to_string(inst.demand.size()) +
                 " entries, expected n = " + std::to_string(n));
    }
    if (j.contains("labels")) inst.labels = j.at("labels").get<std::vector<std::string>>();
    inst.d = matrix_from_json(j.at("d"), n, "d");
    if (j.contains("c") && !j.at("c").is_null()) inst.c = matrix_from_json(j.at("c"), n, "c");
    if (j.contains("annotations")) {
      for (const auto& [key, value] : j.at("annotations").items()) {
        inst.annotations[key] =
            value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("instance: ") + e.what());
  }
}

Json to_json(const DepotSet& s) {
  return Json(std::vector<Vertex>(s.begin(), s.end()));
}

DepotSet depot_set_from_json(const Json& j) {
  return DepotSet(j.get<std::vector<Vertex>>());
}

Json to_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const ValidationIssue& i : report.issues) {
    Json entry;
    entry["severity"] =
        i.severity == ValidationIssue::Severity::kError ? "error" : "info";
    entry["code"] = i.code;
    entry["message"] = i.message;
    if (!i.vertices.empty()) entry["vertices"] = i.vertices;
    issues.push_back(std::move(entry));
  }
  return Json{{"valid", report.valid()}, {"issues", std::move(issues)}};
}

Json to_json(const ObjectiveReport& r) {
  Json j;
  j["med"] = r.med;
  j["flow"] = optional_number(r.flow);
  j["tree_d"] = r.tree_d;
  j["tree_c"] = optional_number(r.tree_c);
  j["rho"] = r.rho;
  j["tree_metric"] = to_string(r.tree_metric);
  j["phi"] = r.phi;
  return j;
}

Json to_json(const RoutePlan& plan, std::optional<double> lower_bound) {
  Json trips = Json::array();
  for (const Trip& t : plan.trips) {
    trips.push_back(Json{{"depot", t.depot},
                         {"stops", t.stops},
                         {"load", t.load},
                         {"length", t.length}});
  }
  Json j;
  j["depots"] = to_json(plan.depots);
  j["trips"] = std::move(trips);
  j["total_cost"] = plan.total_cost;
  if (lower_bound) j["lower_bound"] = *lower_bound;
  return j;
}

RoutePlan route_plan_from_json(const Json& j) {
  try {
    RoutePlan plan;
    plan.depots = depot_set_from_json(j.at("depots"));
    for (const Json& t : j.at("trips")) {
      Trip trip;
      trip.depot = t.at("depot").get<Vertex>();
      trip.stops = t.at("stops").get<std::vector<Vertex>>();
      trip.load = t.at("load").get<double>();
      trip.length = t.at("length").get<double>();
      plan.trips.push_back(std::move(trip));
    }
    plan.total_cost = j.at("total_cost").get<double>();
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("route plan: ") + e.what());
  }
}

Json to_json(const PlanValidation& v) {
  Json j = to_json(v.report);
  j["cost"] = v.cost;
  j["lower_bound"] = v.lower_bound;
  j["upper_bound"] = v.upper_bound;
  j["ratio"] = v.ratio;
  return j;
}

Json to_json(const AcceptedMove& move) {
  Json j;
  j["iteration"] = move.iteration;
  j["D"] = move.move.drop;
  j["A"] = move.move.add;
  j["phi_before"] = move.phi_before;
  j["phi_after"] = move.phi_after;
  return j;
}

Json to_json(const SearchTrace& trace) {
  Json j;
  j["initial"] = to_json(trace.initial);
  j["seed"] = trace.seed ? Json(*trace.seed) : Json(nullptr);
  j["iterations"] = trace.iterations;
  j["max_iters"] = trace.max_iters;
  j["evaluations"] = trace.evaluations;
  j["termination"] = to_string(trace.termination);
  return j;
}

std::string trace_json_lines(const SearchTrace& trace) {
  std::string out;
  for (const AcceptedMove& m : trace.moves) {
    out += to_json(m).dump();
    out += '\n';
  }
  return out;
}

Json to_json(const OracleResult& result) {
  Json j;
  j["objective"] = to_string(result.objective.kind);
  if (result.objective.kind == ObjectiveKind::kKmf) j["rho"] = result.objective.kmf.rho;
  if (result.objective.kind != ObjectiveKind::kMedian) {
    j["tree_metric"] = to_string(result.objective.kmf.tree_metric);
  }
  j["k"] = result.k;
  j["opt_value"] = result.opt_value;
  Json sets = Json::array();
  for (const DepotSet& s : result.argmins) sets.push_back(to_json(s));
  j["argmins"] = std::move(sets);
  j["subsets_scanned"] = result.subsets_scanned;
  return j;
}

Json to_json(const DivergenceReport& report) {
  Json pairs = Json::array();
  for (const FamilyComparison& p : report.pairs) {
    pairs.push_back(Json{{"first", to_string(p.first)},
                         {"second", to_string(p.second)},
                         {"intersect", p.intersect},
                         {"min_symmetric_difference", p.min_symmetric_difference}});
  }
  Json j;
  j["median"] = to_json(report.median);
  j["ktree"] = to_json(report.ktree);
  j["kmf"] = to_json(report.kmf);
  j["pairs"] = std::move(pairs);
  j["pairwise_disjoint"] = report.pairwise_disjoint();
  return j;
}

Json to_json(const SolveResult& result, const std::string& trace_file) {
  Json j;
  j["mode"] = to_string(result.mode);
  Json params;
  params["t"] = result.params.t;
  params["delta"] = result.params.delta;
  params["restarts"] = result.params.restarts;
  params["seed"] = result.params.seed;
  j["params"] = std::move(params);
  j["objective"] = Json{{"rho", result.objective.rho},
                        {"tree_metric", to_string(result.objective.tree_metric)}};
  j["depots"] = to_json(result.depots);
  j["budget_factor"] = result.budget_factor;
  j["report"] = to_json(result.report);
  j["plan"] = result.plan ? to_json(*result.plan, result.lb) : Json(nullptr);
  j["lb"] = optional_number(result.lb);
  j["ratio"] = optional_number(result.ratio);
  j["global_lb"] = optional_number(result.global_lb);
  j["global_ratio"] = optional_number(result.global_ratio);
  j["lb_certifies_optimum"] = result.global_lb.has_value();
  if (result.median_depots) j["median_depots"] = to_json(*result.median_depots);
  if (result.tree_depots) j["tree_depots"] = to_json(*result.tree_depots);
  j["best_seed"] = result.best_seed ? Json(*result.best_seed) : Json(nullptr);
  if (result.trace) {
    Json search = to_json(*result.trace);
    search["accepted_moves"] = result.trace->moves.size();
    search["trace_file"] = trace_file.empty() ? Json(nullptr) : Json(trace_file);
    j["search"] = std::move(search);
  } else {
    j["search"] = nullptr;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace medforest
