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

#include "medforest/instance.hpp"

#include <algorithm>
#include <sstream>

#include "medforest/error.hpp"

namespace medforest {

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::kD ? "d" : "c";
}

MetricKind metric_kind_from_string(std::string_view name) {
  if (name == "d") return MetricKind::kD;
  if (name == "c") return MetricKind::kC;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric '" + std::string(name) + "' (expected d or c)");
}

DistanceMatrix DistanceMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  DistanceMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "distance matrix row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(rows.size()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.n_);
  }
  return m;
}

std::string Instance::label(Vertex v) const {
  if (v < labels.size() && !labels[v].empty()) return labels[v];
  return std::to_string(v);
}

Vertex Instance::vertex(std::string_view name) const {
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v] == name) return static_cast<Vertex>(v);
  throw Error(ErrorCode::kInvalidArgument,
              "no vertex labelled '" + std::string(name) + "'");
}

double Instance::require_capacity() const {
  if (!capacity) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance has no vehicle capacity Q");
  }
  return *capacity;
}

DepotSet::DepotSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "depot set has duplicate vertices");
  }
}

DepotSet DepotSet::all(std::size_t n) {
  std::vector<Vertex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
  return DepotSet(std::move(v));
}

bool DepotSet::contains(Vertex v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void DepotSet::check(std::size_t n, std::optional<std::size_t> expected_size,
                     bool at_most) const {
  if (!members_.empty() && members_.back() >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "depot " + std::to_string(members_.back()) +
                    " out of range for " + std::to_string(n) + " vertices");
  }
  if (expected_size) {
    const bool ok = at_most ? size() <= *expected_size : size() == *expected_size;
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "depot set has " + std::to_string(size()) + " members, " +
                      (at_most ? "at most " : "expected ") +
                      std::to_string(*expected_size));
    }
  }
}

DepotSet DepotSet::set_union(const DepotSet& other) const {
  std::vector<Vertex> merged;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(merged));
  return DepotSet(std::move(merged));
}

std::string to_string(const DepotSet& s, const Instance* inst) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Vertex v : s) {
    if (!first) out << ',';
    first = false;
    out << (inst ? inst->label(v) : std::to_string(v));
  }
  out << '}';
  return out.str();
}

}  // namespace medforest
