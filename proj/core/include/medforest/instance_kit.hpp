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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "medforest/instance.hpp"

namespace medforest {

/// Planar distances, each rounded to a multiple of 1e-12.
DistanceMatrix euclidean_matrix(std::span<const std::array<double, 2>> points);

/// Six-vertex instance [u0,u1,u2,v0,v1,v2] on which the k-median, k-tree and
/// k-median-forest optima are pairwise disjoint. The u/v cross distance is
/// ell^7, standing in for infinity. k = 4, no capacity; the intended rho is
/// ell^2 and is recorded in the annotations.
Instance gen_appendix(long long ell);

/// Two-metric instance on vertices u(i,j), i in 1..k, j in {1,2} (index
/// 2(i-1) + (j-1)) where t-swap local search is stuck at L = {u(i,2)}
/// with value w while {u(i,1)} has value 1. Intended objective: rho = 1,
/// tree metric c.
Instance gen_gap(std::size_t k, double w, double big_m);

Vertex gap_vertex(std::size_t i, std::size_t j);  // 1-based i, j

enum class RandomKind { kEuclidean, kShortestPath };
std::string_view to_string(RandomKind kind);
RandomKind random_kind_from_string(std::string_view name);

struct RandomInstanceOptions {
  std::size_t n = 10;
  std::size_t k = 3;  // clipped to n
  std::uint64_t seed = 0;
  RandomKind kind = RandomKind::kEuclidean;
  std::uint64_t max_demand = 5;  // q uniform in [1, max_demand]
  // Q = capacity_factor * max q.
  double capacity_factor = 2.0;
};

Instance gen_random(const RandomInstanceOptions& options);

/// Native JSON instance format.
Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);
Instance parse_instance(std::string_view json_text);
std::string dump_instance(const Instance& inst);

/// Replaces d (and c) by their shortest-path closure, repairing triangle
/// violations such as those introduced by integer rounding. Returns the
/// number of entries lowered.
std::size_t close_metric(Instance& inst);

/// TSPLIB CVRP subset: EUC_2D (nearest-integer rounding) and
/// EXPLICIT/FULL_MATRIX. The file's depot is kept only as an annotation.
/// When `k` is zero, a "-k<N>" suffix of NAME is used, else 1.
Instance import_tsplib_cvrp(const std::filesystem::path& path,
                            std::size_t k = 0);
Instance parse_tsplib_cvrp(std::string_view text, std::size_t k = 0);

}  // namespace medforest
