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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace medforest {

using Vertex = std::uint32_t;

/// Selects between the primary metric d (median part and routing) and the
/// optional secondary metric c (tree part of the non-uniform objective).
enum class MetricKind { kD, kC };

std::string_view to_string(MetricKind kind);
MetricKind metric_kind_from_string(std::string_view name);

/// Dense symmetric distance matrix, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * n_ + j];
  }

  /// Writes v to both (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, double v) noexcept {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// A k-LocVRP / k-median-forest instance. Immutable once handed to the
/// algorithms; every solver takes it by const reference.
struct Instance {
  std::vector<std::string> labels;  // empty or one per vertex
  std::vector<double> demand;       // q_u >= 0
  std::optional<double> capacity;   // Q; unset for pure location instances
  std::size_t k = 1;                // depot budget
  DistanceMatrix d;
  std::optional<DistanceMatrix> c;  // absent => c = d
  // Free-form provenance notes (generator parameters, TSPLIB depot, ...).
  std::map<std::string, std::string> annotations;

  std::size_t size() const noexcept { return d.size(); }
  bool has_secondary() const noexcept { return c.has_value(); }

  /// The requested metric; kC falls back to d when c is absent.
  const DistanceMatrix& metric(MetricKind kind) const noexcept {
    return (kind == MetricKind::kC && c) ? *c : d;
  }

  std::string label(Vertex v) const;

  /// Index of the vertex with the given label; throws if unknown.
  Vertex vertex(std::string_view label) const;

  /// Capacity, or an Error(kInvalidArgument) when the instance has none.
  double require_capacity() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Sorted, duplicate-free set of depot vertices.
class DepotSet {
 public:
  DepotSet() = default;
  /// Sorts and checks for duplicates; throws on duplicates.
  explicit DepotSet(std::vector<Vertex> members);
  DepotSet(std::initializer_list<Vertex> members)
      : DepotSet(std::vector<Vertex>(members)) {}

  /// Every vertex 0..n-1.
  static DepotSet all(std::size_t n);

  std::span<const Vertex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const noexcept;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  /// Throws Error(kInvalidArgument) unless members are < n and, when given,
  /// the size equals `expected_size` (or is at most it if `at_most`).
  void check(std::size_t n, std::optional<std::size_t> expected_size = {},
             bool at_most = false) const;

  DepotSet set_union(const DepotSet& other) const;

  friend bool operator==(const DepotSet&, const DepotSet&) = default;
  friend auto operator<=>(const DepotSet&, const DepotSet&) = default;

 private:
  std::vector<Vertex> members_;
};

std::string to_string(const DepotSet& s, const Instance* inst = nullptr);

}  // namespace medforest
