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

#include "medforest/instance_kit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "medforest/error.hpp"
#include "medforest/random.hpp"
#include "medforest/serialize.hpp"

namespace medforest {
namespace {

std::string number(double v) { return Json(v).dump(); }

}  // namespace

DistanceMatrix euclidean_matrix(std::span<const std::array<double, 2>> points) {
  DistanceMatrix m(points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const double dist = std::hypot(points[a][0] - points[b][0],
                                     points[a][1] - points[b][1]);
      m.set_symmetric(a, b, std::round(dist * 1e12) / 1e12);
    }
  }
  return m;
}

Instance gen_appendix(long long ell) {
  if (ell < 2) {
    throw Error(ErrorCode::kInvalidArgument, "appendix instance needs ell >= 2");
  }
  const double l = static_cast<double>(ell);
  const double l2 = l * l, l3 = l2 * l, l4 = l3 * l, l7 = l4 * l3;

  Instance inst;
  inst.labels = {"u0", "u1", "u2", "v0", "v1", "v2"};
  inst.demand = {1.0, l4, l4, 1.0, l4, l4};
  inst.k = 4;
  inst.d = DistanceMatrix(6, l7);
  for (std::size_t i = 0; i < 6; ++i) inst.d(i, i) = 0.0;
  inst.d.set_symmetric(0, 1, l3);
  inst.d.set_symmetric(0, 2, l3);
  inst.d.set_symmetric(1, 2, l2);
  inst.d.set_symmetric(3, 4, l4);
  inst.d.set_symmetric(3, 5, l4);
  inst.d.set_symmetric(4, 5, l);
  inst.annotations = {
      {"generator", "appendix"},
      {"ell", std::to_string(ell)},
      {"recommended_rho", number(l2)},
      {"infinite_distance", number(l7)},
  };
  return inst;
}

Vertex gap_vertex(std::size_t i, std::size_t j) {
  return static_cast<Vertex>(2 * (i - 1) + (j - 1));
}

Instance gen_gap(std::size_t k, double w, double big_m) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "gap instance needs k >= 2");
  if (!(w > 1.0) || !(big_m > w)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gap instance needs M > w > 1 (got w = " + number(w) +
                    ", M = " + number(big_m) + ")");
  }
  const std::size_t n = 2 * k;
  Instance inst;
  inst.k = k;
  inst.demand.assign(n, w);
  inst.demand[gap_vertex(k, 2)] = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= 2; ++j)
      inst.labels.push_back("u" + std::to_string(i) + "," + std::to_string(j));

  inst.d = DistanceMatrix(n, 1.0);
  DistanceMatrix c(n, big_m);
  for (std::size_t v = 0; v < n; ++v) {
    inst.d(v, v) = 0.0;
    c(v, v) = 0.0;
  }
  for (std::size_t i = 1; i < k; ++i)
    inst.d.set_symmetric(gap_vertex(i, 2), gap_vertex(i + 1, 1), 0.0);
  for (std::size_t i = 1; i <= k; ++i)
    c.set_symmetric(gap_vertex(i, 1), gap_vertex(i, 2), 0.0);
  inst.c = std::move(c);
  inst.annotations = {
      {"generator", "gap"},
      {"w", number(w)},
      {"M", number(big_m)},
      {"recommended_rho", "1"},
      {"recommended_tree_metric", "c"},
  };
  return inst;
}

std::string_view to_string(RandomKind kind) {
  return kind == RandomKind::kEuclidean ? "euclidean" : "shortest_path_completion";
}

RandomKind random_kind_from_string(std::string_view name) {
  if (name == "euclidean") return RandomKind::kEuclidean;
  if (name == "shortest_path_completion" || name == "shortest_path") {
    return RandomKind::kShortestPath;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown random kind '" + std::string(name) + "'");
}

Instance gen_random(const RandomInstanceOptions& options) {
  const std::size_t n = options.n;
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (options.max_demand < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_demand must be >= 1");
  }
  SplitMix64 rng(options.seed);
  Instance inst;
  inst.k = std::clamp<std::size_t>(options.k, 1, n);

  if (options.kind == RandomKind::kEuclidean) {
    std::vector<std::array<double, 2>> points(n);
    for (auto& p : points) {
      p[0] = rng.uniform();
      p[1] = rng.uniform();
    }
    inst.d = euclidean_matrix(points);
  } else {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    DistanceMatrix g(n, kInf);
    for (std::size_t v = 0; v < n; ++v) g(v, v) = 0.0;
    // Random spanning tree keeps the graph connected; extra edges with
    // probability 0.3 give it cycles.
    for (std::size_t v = 1; v < n; ++v) {
      const auto u = rng.uniform_int(0, v - 1);
      g.set_symmetric(u, v, 0.05 + 0.95 * rng.uniform());
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double coin = rng.uniform();
        const double w = 0.05 + 0.95 * rng.uniform();
        if (coin < 0.3 && w < g(a, b)) g.set_symmetric(a, b, w);
      }
    }
    for (std::size_t via = 0; via < n; ++via)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (g(a, via) + g(via, b) < g(a, b)) g(a, b) = g(a, via) + g(via, b);
    inst.d = std::move(g);
  }

  inst.demand.resize(n);
  double max_q = 0.0;
  for (double& q : inst.demand) {
    q = static_cast<double>(rng.uniform_int(1, options.max_demand));
    max_q = std::max(max_q, q);
  }
  inst.capacity = options.capacity_factor * max_q;
  inst.annotations = {
      {"generator", "random"},
      {"kind", std::string(to_string(options.kind))},
      {"seed", std::to_string(options.seed)},
  };
  return inst;
}

std::size_t close_metric(Instance& inst) {
  auto close = [](DistanceMatrix& m) {
    const std::size_t n = m.size();
    std::size_t lowered = 0;
    for (std::size_t via = 0; via < n; ++via) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const double through = m(a, via) + m(via, b);
          if (through < m(a, b)) {
            m(a, b) = through;
            lowered += a < b;
          }
        }
      }
    }
    return lowered;
  };
  std::size_t lowered = close(inst.d);
  if (inst.c) lowered += close(*inst.c);
  return lowered;
}

Instance parse_instance(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

std::string dump_instance(const Instance& inst) { return dump(to_json(inst)); }

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_instance(text.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << dump_instance(inst);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace medforest
