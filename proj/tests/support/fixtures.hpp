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

// Small instance builders shared by the unit tests.

#pragma once

#include <cmath>
#include <vector>

#include "medforest/instance.hpp"
#include "medforest/instance_kit.hpp"

namespace medforest::testing {

// Points on a line, d = |x_i - x_j|.
inline Instance line_instance(const std::vector<double>& xs, const std::vector<double>& q,
                              std::optional<double> capacity, std::size_t k) {
  Instance inst;
  const std::size_t n = xs.size();
  inst.d = DistanceMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inst.d.set_symmetric(i, j, std::abs(xs[i] - xs[j]));
  inst.demand = q;
  inst.capacity = capacity;
  inst.k = k;
  for (std::size_t i = 0; i < n; ++i) inst.labels.push_back("p" + std::to_string(i));
  return inst;
}

inline Instance random_instance(std::size_t n, std::size_t k, std::uint64_t seed,
                                RandomKind kind = RandomKind::kEuclidean,
                                double capacity_factor = 2.0) {
  RandomInstanceOptions options;
  options.n = n;
  options.k = k;
  options.seed = seed;
  options.kind = kind;
  options.capacity_factor = capacity_factor;
  return gen_random(options);
}

inline std::vector<Vertex> as_vector(const DepotSet& s) {
  return {s.begin(), s.end()};
}

}  // namespace medforest::testing
