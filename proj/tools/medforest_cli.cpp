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

// medforest: command-line front end for depot location, routing and the
// exhaustive verification oracles. Machine-readable JSON goes to files or
// stdout; human-readable summaries go to stderr.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "medforest/error.hpp"
#include "medforest/instance_kit.hpp"
#include "medforest/metric.hpp"
#include "medforest/mst.hpp"
#include "medforest/oracles.hpp"
#include "medforest/pipeline.hpp"
#include "medforest/router.hpp"
#include "medforest/serialize.hpp"

namespace mf = medforest;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitGuard = 3;
constexpr int kExitVerify = 4;

// Raised when a verification-style command completes but its checks fail.
struct CheckFailed {};

unsigned default_threads() {
  if (const char* env = std::getenv("MEDFOREST_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mf::Error(mf::ErrorCode::kIo, "cannot write " + path);
  out << text;
}

mf::Json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mf::Error(mf::ErrorCode::kIo, "cannot open " + path);
  try {
    return mf::Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw mf::Error(mf::ErrorCode::kParse, path + ": " + e.what());
  }
}

mf::Json labels_of(const mf::Instance& inst, const mf::DepotSet& s) {
  mf::Json out = mf::Json::array();
  for (mf::Vertex v : s) out.push_back(inst.label(v));
  return out;
}

bool close_enough(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Fills rho / tree metric from the instance's recommendations unless set.
mf::Objective objective_for(const mf::Instance& inst, std::optional<double> rho,
                            std::optional<std::string> tree_metric) {
  mf::Objective obj;
  if (rho) {
    obj.rho = *rho;
  } else if (auto it = inst.annotations.find("recommended_rho");
             it != inst.annotations.end()) {
    obj.rho = std::stod(it->second);
  }
  if (tree_metric) {
    obj.tree_metric = mf::metric_kind_from_string(*tree_metric);
  } else if (auto it = inst.annotations.find("recommended_tree_metric");
             it != inst.annotations.end() && inst.c) {
    obj.tree_metric = mf::metric_kind_from_string(it->second);
  }
  return obj;
}

void require_valid(const mf::Instance& inst, bool check_unsplit) {
  mf::ValidationOptions options;
  options.check_unsplit = check_unsplit;
  const auto report = mf::validate_instance(inst, options);
  for (const auto& issue : report.issues) {
    if (issue.severity == mf::ValidationIssue::Severity::kError) {
      std::cerr << "invalid instance: " << issue.message << "\n";
    }
  }
  if (!report.valid()) {
    throw mf::Error(mf::ErrorCode::kParse,
                    "instance fails validation (" +
                        std::to_string(report.error_count()) + " errors)");
  }
}

// --------------------------------------------------------------------------

struct SolveArgs {
  std::string instance, mode = "locvrp", out, trace;
  std::size_t t = 2, restarts = 8;
  double delta = 1e-7;
  std::uint64_t seed = 0;
  std::optional<double> rho;
  std::optional<std::string> tree_metric;
};

void run_solve(const SolveArgs& a, unsigned threads) {
  const mf::Instance inst = mf::read_instance(a.instance);
  const mf::SolveMode mode = mf::solve_mode_from_string(a.mode);
  const bool routing = mode == mf::SolveMode::kLocVrp ||
                       mode == mf::SolveMode::kBicriteria;
  require_valid(inst, routing);

  mf::SolveOptions options;
  options.t = a.t;
  options.delta = a.delta;
  options.restarts = a.restarts;
  options.seed = a.seed;
  options.threads = threads;
  options.objective = objective_for(inst, a.rho, a.tree_metric);

  const mf::SolveResult result = mf::solve(inst, mode, options);
  if (!a.trace.empty() && result.trace) {
    write_text(a.trace, mf::trace_json_lines(*result.trace));
  }
  mf::Json j = mf::to_json(result, a.trace);
  j["depot_labels"] = labels_of(inst, result.depots);
  write_text(a.out, mf::dump(j));

  std::cerr << "mode " << a.mode << ": depots " << mf::to_string(result.depots, &inst)
            << ", phi " << result.report.phi;
  if (result.plan) {
    std::cerr << ", " << result.plan->trips.size() << " trips, cost "
              << result.plan->total_cost;
    if (result.ratio) std::cerr << ", ratio vs lower bound " << *result.ratio;
    if (result.global_ratio) std::cerr << ", vs exhaustive bound " << *result.global_ratio;
  }
  std::cerr << "\n";
}

// --------------------------------------------------------------------------

struct OracleArgs {
  std::string instance, objective = "median", out;
  std::optional<double> rho;
  std::optional<std::string> tree_metric;
  std::optional<std::size_t> k;
};

void run_oracle(const OracleArgs& a, unsigned threads) {
  const mf::Instance inst = mf::read_instance(a.instance);
  require_valid(inst, false);
  const auto kind = mf::objective_kind_from_string(a.objective);
  const mf::Objective obj = objective_for(inst, a.rho, a.tree_metric);
  mf::OracleObjective objective{kind, obj};
  if (kind == mf::ObjectiveKind::kMedian) objective = mf::OracleObjective::median();
  if (kind == mf::ObjectiveKind::kKTree) objective = mf::OracleObjective::ktree(obj.tree_metric);

  const auto result =
      mf::brute_subset_opt(inst, a.k.value_or(inst.k), objective, threads);
  mf::Json j = mf::to_json(result);
  mf::Json labels = mf::Json::array();
  for (const auto& s : result.argmins) labels.push_back(labels_of(inst, s));
  j["argmin_labels"] = std::move(labels);
  write_text(a.out, mf::dump(j));
  std::cerr << a.objective << " optimum " << result.opt_value << " attained by "
            << result.argmins.size() << " of " << result.subsets_scanned
            << " subsets\n";
}

// --------------------------------------------------------------------------

struct VerifyArgs {
  std::string instance, result, out;
};

void run_verify(const VerifyArgs& a) {
  const mf::Instance inst = mf::read_instance(a.instance);
  const mf::Json j = read_json(a.result);

  mf::Json checks = mf::Json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back(mf::Json{{"check", name}, {"pass", pass}, {"detail", detail}});
    all = all && pass;
    std::cerr << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  };

  mf::Json summary;
  try {
    const auto mode = mf::solve_mode_from_string(j.at("mode").get<std::string>());
    const mf::DepotSet depots = mf::depot_set_from_json(j.at("depots"));
    const bool bicriteria = mode == mf::SolveMode::kBicriteria;
    bool depots_ok = !depots.empty() && depots.members().back() < inst.size();
    const std::size_t allowed = bicriteria ? 2 * inst.k : inst.k;
    depots_ok = depots_ok &&
                (bicriteria ? depots.size() <= allowed : depots.size() == allowed);
    check("depots", depots_ok,
          std::to_string(depots.size()) + " depots, budget " +
              (bicriteria ? "<= " : "== ") + std::to_string(allowed));
    if (!depots_ok) throw CheckFailed{};

    const auto& stored = j.at("report");
    const double rho = j.at("objective").at("rho").get<double>();
    const auto metric = mf::metric_kind_from_string(
        j.at("objective").at("tree_metric").get<std::string>());
    const auto report = mf::objective_report(inst, depots, rho, metric);
    bool report_ok = close_enough(report.med, stored.at("med").get<double>()) &&
                     close_enough(report.tree_d, stored.at("tree_d").get<double>()) &&
                     close_enough(report.phi, stored.at("phi").get<double>());
    if (report.flow) {
      report_ok = report_ok && !stored.at("flow").is_null() &&
                  close_enough(*report.flow, stored.at("flow").get<double>());
    }
    check("objective_report", report_ok,
          "recomputed med " + mf::Json(report.med).dump() + ", phi " +
              mf::Json(report.phi).dump());
    summary["phi"] = report.phi;

    const bool routing = mode == mf::SolveMode::kLocVrp || bicriteria;
    if (j.at("plan").is_null()) {
      check("plan_present", !routing,
            routing ? "routing mode without a plan" : "no plan (location-only mode)");
    } else {
      const mf::RoutePlan plan = mf::route_plan_from_json(j.at("plan"));
      const auto v = mf::validate_plan(inst, plan);
      std::string detail = std::to_string(plan.trips.size()) + " trips";
      for (const auto& issue : v.report.issues) detail += "; " + issue.message;
      check("plan_valid", v.valid(), detail);
      check("plan_depots", plan.depots == depots, "plan depots match result depots");
      check("routing_bound", v.cost <= v.upper_bound + 1e-9 + 1e-12 * v.upper_bound,
            "cost " + mf::Json(v.cost).dump() + " <= 2 Flow + 2 Tree = " +
                mf::Json(v.upper_bound).dump());
      check("lower_bound", v.cost >= v.lower_bound - 1e-9 * std::max(1.0, v.lower_bound),
            "cost " + mf::Json(v.cost).dump() + " >= max(Flow, Tree) = " +
                mf::Json(v.lower_bound).dump());
      if (j.contains("lb") && !j.at("lb").is_null()) {
        check("lb_recomputed", close_enough(v.lower_bound, j.at("lb").get<double>()),
              "stored lb " + j.at("lb").dump());
      }
      summary["cost"] = v.cost;
      summary["lower_bound"] = v.lower_bound;
      summary["upper_bound"] = v.upper_bound;
      summary["ratio"] = v.ratio;
      std::cerr << "ratio vs lower bound: " << v.ratio << "\n";
    }
  } catch (const CheckFailed&) {
  } catch (const nlohmann::json::exception& e) {
    throw mf::Error(mf::ErrorCode::kParse, a.result + ": " + e.what());
  }
  summary["checks"] = std::move(checks);
  summary["pass"] = all;
  write_text(a.out, mf::dump(summary));
  if (!all) throw CheckFailed{};
}

// --------------------------------------------------------------------------

struct GenArgs {
  std::string kind = "random", random_kind = "euclidean", out;
  long long ell = 10;
  std::size_t k = 4, n = 10;
  double w = 100, big_m = 1e6;
  std::uint64_t seed = 0;
  std::optional<double> capacity;
};

void run_gen(const GenArgs& a) {
  mf::Instance inst;
  if (a.kind == "appendix") {
    inst = mf::gen_appendix(a.ell);
  } else if (a.kind == "gap") {
    inst = mf::gen_gap(a.k, a.w, a.big_m);
  } else if (a.kind == "random") {
    mf::RandomInstanceOptions options;
    options.n = a.n;
    options.k = a.k;
    options.seed = a.seed;
    options.kind = mf::random_kind_from_string(a.random_kind);
    inst = mf::gen_random(options);
  } else {
    throw mf::Error(mf::ErrorCode::kInvalidArgument, "unknown kind '" + a.kind + "'");
  }
  if (a.capacity) inst.capacity = *a.capacity;
  write_text(a.out, mf::dump_instance(inst));
  std::cerr << "generated " << a.kind << " instance: n = " << inst.size()
            << ", k = " << inst.k << "\n";
}

// --------------------------------------------------------------------------

struct GapArgs {
  std::size_t k = 4, t = 3;
  double w = 100, big_m = 1e6;
  std::string out;
};

void run_gap_demo(const GapArgs& a, unsigned threads) {
  const mf::Instance inst = mf::gen_gap(a.k, a.w, a.big_m);
  const mf::Objective obj{1.0, mf::MetricKind::kC};
  std::vector<mf::Vertex> stuck, best;
  for (std::size_t i = 1; i <= a.k; ++i) {
    stuck.push_back(mf::gap_vertex(i, 2));
    best.push_back(mf::gap_vertex(i, 1));
  }
  const mf::DepotSet local(stuck), global(best);
  const auto optimality = mf::is_local_opt(inst, obj, local, a.t, threads);
  const double phi_star = mf::phi(inst, obj, global);
  const auto oracle =
      mf::brute_subset_opt(inst, a.k, mf::OracleObjective::kmf_with(1.0, mf::MetricKind::kC),
                           threads);
  const auto consistency = mf::consistency_check(inst);
  const double ratio = optimality.phi / oracle.opt_value;
  const bool ratio_ok = std::abs(ratio - a.w) <= 1e-9 * std::max(1.0, a.w);

  mf::Json j;
  j["k"] = a.k;
  j["w"] = a.w;
  j["M"] = a.big_m;
  j["t"] = a.t;
  j["L"] = labels_of(inst, local);
  j["phi_L"] = optimality.phi;
  j["S_star"] = labels_of(inst, global);
  j["phi_S_star"] = phi_star;
  j["phi_opt"] = oracle.opt_value;
  j["subsets_scanned"] = oracle.subsets_scanned;
  j["ratio"] = ratio;
  j["L_local_optimum"] = optimality.local_optimum;
  j["swaps_checked"] = optimality.moves_checked;
  if (optimality.improving) {
    j["improving_move"] = mf::Json{{"D", optimality.improving->drop},
                                   {"A", optimality.improving->add}};
  }
  j["consistent"] = consistency.consistent;
  if (consistency.witness) {
    const auto& [e, f] = *consistency.witness;
    j["consistency_witness"] = mf::Json{
        {"e", {inst.label(e.a), inst.label(e.b)}},
        {"f", {inst.label(f.a), inst.label(f.b)}}};
  }
  j["pass"] = optimality.local_optimum && ratio_ok;
  write_text(a.out, mf::dump(j));

  std::cerr << "phi(L) = " << optimality.phi << ", phi(opt) = " << oracle.opt_value
            << ", ratio = " << ratio << "; L is "
            << (optimality.local_optimum ? "" : "NOT ") << "a " << a.t
            << "-swap local optimum (" << optimality.moves_checked
            << " swaps checked); metrics "
            << (consistency.consistent ? "consistent" : "inconsistent") << "\n";
  if (!optimality.local_optimum || !ratio_ok) throw CheckFailed{};
}

// --------------------------------------------------------------------------

struct ImportArgs {
  std::string in, out;
  std::size_t k = 0;
  bool closure = false;
};

void run_import(const ImportArgs& a) {
  mf::Instance inst = mf::import_tsplib_cvrp(a.in, a.k);
  if (a.closure) {
    const std::size_t lowered = mf::close_metric(inst);
    inst.annotations["metric_closure"] = std::to_string(lowered);
  }
  const auto report = mf::validate_instance(inst);
  if (report.has("triangle")) {
    std::cerr << "warning: rounded distances break the triangle inequality; "
                 "rerun with --metric-closure to repair\n";
  }
  write_text(a.out, mf::dump_instance(inst));
  std::cerr << "imported " << inst.size() << " vertices, Q = "
            << inst.capacity.value_or(0.0) << ", k = " << inst.k << "\n";
}

struct ValidateArgs {
  std::string instance, out;
};

void run_validate(const ValidateArgs& a) {
  const mf::Instance inst = mf::read_instance(a.instance);
  const auto report = mf::validate_instance(inst);
  write_text(a.out, mf::dump(mf::to_json(report)));
  for (const auto& issue : report.issues) std::cerr << issue.code << ": " << issue.message << "\n";
  if (!report.valid()) throw CheckFailed{};
}

int exit_code(const mf::Error& e) {
  switch (e.code()) {
    case mf::ErrorCode::kParse:
    case mf::ErrorCode::kIo: return kExitIo;
    case mf::ErrorCode::kGuard: return kExitGuard;
    case mf::ErrorCode::kInternal: return kExitVerify;
    case mf::ErrorCode::kInvalidArgument:
    case mf::ErrorCode::kInfeasible: return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"medforest: k-location capacitated vehicle routing and k-median-forest"};
  app.require_subcommand(1);
  unsigned threads = default_threads();
  app.add_option("--threads", threads, "Worker thread cap (env MEDFOREST_THREADS)")
      ->check(CLI::PositiveNumber);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Choose depots and build routes");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--mode", solve.mode, "Solver")
      ->check(CLI::IsMember({"locvrp", "kmf", "kmedian", "ktree", "bicriteria"}));
  solve_cmd->add_option("--t", solve.t, "Maximum swap size")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--delta", solve.delta, "Acceptance factor slack");
  solve_cmd->add_option("--restarts", solve.restarts, "Random restarts")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed, "Seed of the first restart");
  solve_cmd->add_option("--rho", solve.rho, "Tree multiplier for --mode kmf");
  solve_cmd->add_option("--tree-metric", solve.tree_metric, "Tree metric for kmf/ktree")
      ->check(CLI::IsMember({"d", "c"}));
  solve_cmd->add_option("--out", solve.out, "Result JSON (stdout if omitted)");
  solve_cmd->add_option("--trace", solve.trace, "Accepted moves as JSON lines");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum over k-subsets");
  oracle_cmd->add_option("--instance", oracle.instance, "Instance JSON")->required();
  oracle_cmd->add_option("--objective", oracle.objective, "Objective")
      ->check(CLI::IsMember({"median", "ktree", "kmf"}));
  oracle_cmd->add_option("--rho", oracle.rho, "Tree multiplier for kmf");
  oracle_cmd->add_option("--tree-metric", oracle.tree_metric, "Tree metric")
      ->check(CLI::IsMember({"d", "c"}));
  oracle_cmd->add_option("--k", oracle.k, "Depot budget (instance k by default)");
  oracle_cmd->add_option("--out", oracle.out, "Output JSON (stdout if omitted)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a solve result");
  verify_cmd->add_option("--instance", verify.instance, "Instance JSON")->required();
  verify_cmd->add_option("--result", verify.result, "Result JSON from solve")->required();
  verify_cmd->add_option("--out", verify.out, "Check report JSON (stdout if omitted)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--kind", gen.kind, "Generator")
      ->check(CLI::IsMember({"appendix", "gap", "random"}));
  gen_cmd->add_option("--ell", gen.ell, "Scale of the appendix instance");
  gen_cmd->add_option("--k", gen.k, "Depot budget");
  gen_cmd->add_option("--w", gen.w, "Gap instance weight");
  gen_cmd->add_option("--M", gen.big_m, "Gap instance tree penalty");
  gen_cmd->add_option("--n", gen.n, "Random instance size");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--random-kind", gen.random_kind, "Random metric")
      ->check(CLI::IsMember({"euclidean", "shortest_path_completion"}));
  gen_cmd->add_option("--capacity", gen.capacity, "Override vehicle capacity Q");
  gen_cmd->add_option("--out", gen.out, "Instance JSON")->required();

  GapArgs gap;
  auto* gap_cmd = app.add_subcommand("gap-demo", "Locality gap of the two-metric objective");
  gap_cmd->add_option("--k", gap.k, "Depot budget");
  gap_cmd->add_option("--w", gap.w, "Weight (the expected gap)");
  gap_cmd->add_option("--M", gap.big_m, "Tree penalty");
  gap_cmd->add_option("--t", gap.t, "Swap size to certify");
  gap_cmd->add_option("--out", gap.out, "Report JSON (stdout if omitted)");

  ImportArgs import;
  auto* import_cmd = app.add_subcommand("import-tsplib", "Convert a TSPLIB CVRP file");
  import_cmd->add_option("--in", import.in, "TSPLIB .vrp file")->required();
  import_cmd->add_option("--out", import.out, "Instance JSON")->required();
  import_cmd->add_option("--k", import.k, "Depot budget (0: from NAME -kN, else 1)");
  import_cmd->add_flag("--metric-closure", import.closure,
                       "Replace distances by shortest paths");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check instance invariants");
  validate_cmd->add_option("--instance", validate.instance, "Instance JSON")->required();
  validate_cmd->add_option("--out", validate.out, "Report JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) run_solve(solve, threads);
    else if (*oracle_cmd) run_oracle(oracle, threads);
    else if (*verify_cmd) run_verify(verify);
    else if (*gen_cmd) run_gen(gen);
    else if (*gap_cmd) run_gap_demo(gap, threads);
    else if (*import_cmd) run_import(import);
    else if (*validate_cmd) run_validate(validate);
  } catch (const CheckFailed&) {
    return kExitVerify;
  } catch (const mf::Error& e) {
    std::cerr << "error (" << mf::to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
