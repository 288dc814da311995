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

// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   medforest_acceptance <path-to-medforest-cli>
// Exit status is the number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "medforest/instance_kit.hpp"
#include "medforest/local_search.hpp"
#include "medforest/metric.hpp"
#include "medforest/mst.hpp"
#include "medforest/oracles.hpp"
#include "medforest/pipeline.hpp"
#include "medforest/random.hpp"
#include "medforest/router.hpp"
#include "medforest/serialize.hpp"

namespace mf = medforest;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds,
               const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  const bool pass = v.pass && in_time;
  failures += !pass;
  std::ostringstream timing;
  timing.precision(3);
  timing << std::fixed << secs << " s";
  if (limit_seconds > 0) timing << (in_time ? " < " : " >= ") << limit_seconds << " s";
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << " (" << title
            << "): " << v.detail << " [" << timing.str() << "]" << std::endl;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + stdout_file.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

struct SeededCase {
  mf::Instance inst;
  double rho = 0.0;
  std::string rho_name;
};

// Criterion 2 / 8 population: n in [6,11], k in [2,4], q in [1,5],
// rho cycling through {0, 1, Q/2}, both random metric families.
std::vector<SeededCase> search_population() {
  std::vector<SeededCase> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    mf::RandomInstanceOptions options;
    options.n = 6 + i % 6;
    options.k = 2 + (i / 6) % 3;
    options.seed = 1000 + i;
    options.max_demand = 5;
    options.kind = (i / 18) % 2 ? mf::RandomKind::kShortestPath : mf::RandomKind::kEuclidean;
    SeededCase c{mf::gen_random(options)};
    switch (i % 3) {
      case 0: c.rho = 0.0; c.rho_name = "0"; break;
      case 1: c.rho = 1.0; c.rho_name = "1"; break;
      default: c.rho = *c.inst.capacity / 2; c.rho_name = "Q/2"; break;
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Criterion 6 / 7 population: n in [5,10], k in [1,3].
std::vector<mf::Instance> routing_population() {
  std::vector<mf::Instance> out;
  for (std::uint64_t i = 0; i < 50; ++i) {
    mf::RandomInstanceOptions options;
    options.n = 5 + i % 6;
    options.k = 1 + (i / 6) % 3;
    options.seed = 5000 + i;
    options.capacity_factor = std::vector<double>{1, 2, 4}[i % 3];
    options.kind = i % 2 ? mf::RandomKind::kShortestPath : mf::RandomKind::kEuclidean;
    out.push_back(mf::gen_random(options));
  }
  return out;
}

Verdict appendix() {
  const mf::Instance inst = mf::gen_appendix(10);
  auto set = [&](std::initializer_list<const char*> names) {
    std::vector<mf::Vertex> v;
    for (const char* n : names) v.push_back(inst.vertex(n));
    return mf::DepotSet(v);
  };
  const auto report = mf::divergence_report(inst, 4, 100.0);
  const bool med_ok = report.median.opt_value == 11000.0 && report.median.argmins.size() == 1 &&
                      report.median.argmins[0] == set({"u1", "u2", "v1", "v2"});
  const bool tree_ok = report.ktree.opt_value == 110.0 && report.ktree.argmins.size() == 4;
  const bool kmf_ok = report.kmf.opt_value == 202000.0 && report.kmf.argmins.size() == 2 &&
                      report.kmf.argmins[0] == set({"u1", "u2", "v0", "v1"}) &&
                      report.kmf.argmins[1] == set({"u1", "u2", "v0", "v2"});
  const bool disjoint = report.pairwise_disjoint();
  return {med_ok && tree_ok && kmf_ok && disjoint,
          "median " + fmt(report.median.opt_value) + " x" +
              std::to_string(report.median.argmins.size()) + ", ktree " +
              fmt(report.ktree.opt_value) + " x" + std::to_string(report.ktree.argmins.size()) +
              ", kmf(rho=100) " + fmt(report.kmf.opt_value) + " x" +
              std::to_string(report.kmf.argmins.size()) + ", families pairwise disjoint: " +
              (disjoint ? "yes" : "no")};
}

Verdict local_search_ratio(const std::vector<SeededCase>& cases) {
  double worst1 = 0.0, worst2 = 0.0;
  std::size_t bad1 = 0, bad2 = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const mf::Objective obj{c.rho};
    const double opt =
        mf::brute_subset_opt(c.inst, c.inst.k, mf::OracleObjective::kmf_with(c.rho)).opt_value;
    for (std::size_t t : {1, 2}) {
      mf::SearchOptions options;
      options.k = c.inst.k;
      options.t = t;
      options.seed = i;
      const double got = mf::local_search(c.inst, obj, options).phi;
      const double ratio = opt > 0 ? got / opt : (got == 0 ? 1.0 : INFINITY);
      const double bound = (t == 1 ? 5.0 : 4.0) * (1 + 1e-6);
      if (t == 1) {
        worst1 = std::max(worst1, ratio);
        bad1 += ratio > bound;
      } else {
        worst2 = std::max(worst2, ratio);
        bad2 += ratio > bound;
      }
    }
  }
  return {bad1 == 0 && bad2 == 0,
          std::to_string(cases.size()) + " instances; worst Phi/opt t=1 " + fmt(worst1) +
              " (bound 5), t=2 " + fmt(worst2) + " (bound 4); violations " +
              std::to_string(bad1) + "/" + std::to_string(bad2)};
}

Verdict gap_demo(const std::string& cli, const fs::path& dir) {
  bool ok = true;
  std::string detail;
  for (double w : {100.0, 1e4}) {
    const fs::path out = dir / "gap.json";
    std::ostringstream args;
    args << "gap-demo --k 4 --w " << w << " --M 1e6 --t 3";
    const int code = run_cli(cli, args.str(), out);
    const mf::Json j = mf::Json::parse(slurp(out));
    const double ratio = j.at("ratio").get<double>();
    const bool local = j.at("L_local_optimum").get<bool>();
    const bool consistent = j.at("consistent").get<bool>();
    const auto checked = j.at("swaps_checked").get<std::uint64_t>();
    // Independent check of the exhaustive optimum in-process.
    const mf::Instance inst = mf::gen_gap(4, w, 1e6);
    const double opt = mf::brute_subset_opt(inst, 4, mf::OracleObjective::kmf_with(1.0, mf::MetricKind::kC))
                           .opt_value;
    const bool this_ok = code == 0 && local && !consistent && ratio == w &&
                         checked == mf::SwapEnumerator::count(4, 8, 3) &&
                         j.at("phi_opt").get<double>() == opt;
    ok = ok && this_ok;
    detail += "w=" + fmt(w) + ": exit " + std::to_string(code) + ", ratio " + fmt(ratio) +
              ", L local optimum over " + std::to_string(checked) + " swaps: " +
              (local ? "yes" : "no") + ", consistent: " + (consistent ? "yes" : "no") + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Verdict routing_bound() {
  mf::SplitMix64 rng(4242);
  std::size_t bad = 0, invalid = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    mf::RandomInstanceOptions options;
    options.n = rng.uniform_int(2, 40);
    options.k = 1;
    options.seed = 7000 + i;
    options.capacity_factor = std::vector<double>{1, 2, 4}[i % 3];
    const mf::Instance inst = mf::gen_random(options);
    const std::size_t size = rng.uniform_int(1, std::min<std::size_t>(4, options.n));
    const mf::DepotSet s = mf::random_subset(options.n, size, rng);
    const auto plan = mf::build_routes(inst, s);
    const double bound = 2 * mf::flow_cost(inst, s) + 2 * mf::contracted_mst(inst, s).cost;
    bad += plan.total_cost > bound + 1e-9;
    invalid += !mf::validate_plan(inst, plan).valid();
    if (bound > 0) worst = std::max(worst, plan.total_cost / bound);
  }
  return {bad == 0 && invalid == 0,
          "100 instances; cost <= 2 Flow + 2 Tree + 1e-9 violations " + std::to_string(bad) +
              ", invalid plans " + std::to_string(invalid) + ", worst cost/(2F+2T) " + fmt(worst)};
}

Verdict sandwich() {
  mf::SplitMix64 rng(99);
  std::size_t bad = 0;
  double worst_gap = 0.0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t depots = 1 + i % 2;
    const std::size_t customers = 3 + i % 5;  // 3..7
    mf::RandomInstanceOptions options;
    options.n = depots + customers;
    options.k = depots;
    options.seed = 9000 + i;
    options.capacity_factor = std::vector<double>{1, 2, 4}[i % 3];
    options.kind = i % 2 ? mf::RandomKind::kShortestPath : mf::RandomKind::kEuclidean;
    const mf::Instance inst = mf::gen_random(options);
    const mf::DepotSet s = mf::random_subset(options.n, depots, rng);
    const double lb = mf::lower_bound(inst, s);
    const double exact = mf::brute_cvrp(inst, s, 7);
    const double heuristic = mf::build_routes(inst, s).total_cost;
    bad += !(lb - 1e-9 <= exact && exact <= heuristic + 1e-9);
    if (exact > 0) worst_gap = std::max(worst_gap, heuristic / exact);
  }
  return {bad == 0, "30 instances; lb <= exact <= heuristic violations " + std::to_string(bad) +
                        ", worst heuristic/exact " + fmt(worst_gap)};
}

Verdict end_to_end(const std::vector<mf::Instance>& cases, bool bicriteria) {
  const double factor = bicriteria ? 12.5 : 12.1;
  std::size_t bad = 0, budget = 0;
  double worst = 0.0;
  for (const auto& inst : cases) {
    mf::SolveOptions options;
    options.t = 2;
    const auto result = bicriteria ? mf::solve_bicriteria(inst, options) : mf::solve_klocvrp(inst, options);
    const double lb = mf::brute_routing_lower_bound(inst, inst.k).value;
    const double cost = result.plan->total_cost;
    bad += cost > factor * lb;
    budget += bicriteria ? result.depots.size() > 2 * inst.k : result.depots.size() != inst.k;
    if (lb > 0) worst = std::max(worst, cost / lb);
  }
  return {bad == 0 && budget == 0,
          "50 instances; worst cost / exhaustive min_S max{Flow,Tree} " + fmt(worst) + " (bound " +
              fmt(factor) + "), bound violations " + std::to_string(bad) +
              ", depot budget violations " + std::to_string(budget)};
}

Verdict ktree_exact(const std::vector<SeededCase>& cases) {
  std::size_t bad = 0;
  for (const auto& c : cases) {
    const auto alg = mf::ktree_opt(c.inst, c.inst.k);
    const double tree = mf::contracted_mst(c.inst, alg.depots).cost;
    const double opt = mf::brute_subset_opt(c.inst, c.inst.k, mf::OracleObjective::ktree()).opt_value;
    bad += !(tree == opt && alg.forest_cost == opt);
  }
  return {bad == 0, std::to_string(cases.size()) + " instances; Tree(ktree_opt) != oracle optimum on " +
                        std::to_string(bad)};
}

Verdict determinism(const std::string& cli, const fs::path& dir) {
  {
    std::ofstream(dir / "t.vrp") << "NAME : det-k2\nDIMENSION : 6\nCAPACITY : 6\n"
                                    "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
                                    "1 0 0\n2 5 9\n3 12 3\n4 7 7\n5 1 11\n6 10 10\n"
                                    "DEMAND_SECTION\n1 0\n2 2\n3 3\n4 1\n5 4\n6 2\n"
                                    "DEPOT_SECTION\n1\n-1\nEOF\n";
  }
  const std::string d = dir.string() + "/";
  // {command, files written besides stdout}
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"gen --kind random --n 11 --k 3 --seed 7 --out " + d + "r.json", {"r.json"}},
      {"gen --kind random --n 10 --k 2 --seed 3 --random-kind shortest_path_completion --out " + d +
           "s.json", {"s.json"}},
      {"gen --kind appendix --ell 10 --out " + d + "a.json", {"a.json"}},
      {"gen --kind gap --k 4 --w 100 --M 1e6 --out " + d + "g.json", {"g.json"}},
      {"solve --instance " + d + "r.json --mode locvrp --seed 5 --out " + d + "o1.json --trace " + d +
           "o1.jsonl", {"o1.json", "o1.jsonl"}},
      {"solve --instance " + d + "s.json --mode bicriteria --out " + d + "o2.json", {"o2.json"}},
      {"solve --instance " + d + "r.json --mode kmf --rho 2 --out " + d + "o3.json", {"o3.json"}},
      {"solve --instance " + d + "g.json --mode kmf --tree-metric c --rho 1 --out " + d + "o4.json",
       {"o4.json"}},
      {"solve --instance " + d + "r.json --mode kmedian --out " + d + "o5.json", {"o5.json"}},
      {"solve --instance " + d + "r.json --mode ktree --out " + d + "o6.json", {"o6.json"}},
      {"oracle --instance " + d + "a.json --objective kmf", {}},
      {"oracle --instance " + d + "r.json --objective median", {}},
      {"verify --instance " + d + "r.json --result " + d + "o1.json", {}},
      {"validate --instance " + d + "s.json", {}},
      {"gap-demo --k 4 --w 100 --M 1e6 --t 3", {}},
      {"import-tsplib --in " + d + "t.vrp --out " + d + "t.json", {"t.json"}},
  };
  std::size_t mismatches = 0, errors = 0, compared = 0;
  for (const auto& [args, files] : commands) {
    std::vector<std::string> first;
    for (int round = 0; round < 2; ++round) {
      const int code = run_cli(cli, args, dir / "stdout.txt");
      errors += code != 0;
      std::vector<std::string> outputs{slurp(dir / "stdout.txt")};
      for (const auto& f : files) outputs.push_back(slurp(dir / f));
      if (round == 0) {
        first = outputs;
      } else {
        for (std::size_t i = 0; i < outputs.size(); ++i) {
          ++compared;
          mismatches += outputs[i] != first[i];
        }
      }
    }
  }
  return {mismatches == 0 && errors == 0,
          std::to_string(commands.size()) + " commands run twice, " + std::to_string(compared) +
              " outputs compared byte for byte; mismatches " + std::to_string(mismatches) +
              ", failed runs " + std::to_string(errors)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: medforest_acceptance <medforest-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path dir = fs::temp_directory_path() / "medforest_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const auto population = search_population();
  const auto routing = routing_population();

  criterion(1, "appendix optima and divergence", 1.0, appendix);
  criterion(2, "t-swap local search vs exhaustive optimum", 120.0,
            [&] { return local_search_ratio(population); });
  criterion(3, "locality gap with two metrics", 10.0, [&] { return gap_demo(cli, dir); });
  criterion(4, "routing cost <= 2 Flow + 2 Tree", 30.0, routing_bound);
  criterion(5, "lower bound <= exact routing <= heuristic", 120.0, sandwich);
  criterion(6, "k-LocVRP end to end within 12.1x", 180.0,
            [&] { return end_to_end(routing, false); });
  criterion(7, "bicriteria within 12.5x and 2k depots", 0.0,
            [&] { return end_to_end(routing, true); });
  criterion(8, "ktree_opt exactness", 0.0, [&] { return ktree_exact(population); });
  criterion(9, "byte-identical CLI output", 0.0, [&] { return determinism(cli, dir); });

  fs::remove_all(dir);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
