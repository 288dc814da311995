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

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "medforest/error.hpp"
#include "medforest/instance_kit.hpp"

namespace medforest {
namespace {

struct Line {
  std::size_t number = 0;
  std::string text;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool starts_keyword(const std::string& s) {
  return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0]));
}

// Whitespace-separated numbers of the section starting after `pos`, up to the
// next keyword line.
std::vector<std::pair<double, std::size_t>> section_numbers(
    const std::vector<Line>& lines, std::size_t& pos) {
  std::vector<std::pair<double, std::size_t>> out;
  while (pos + 1 < lines.size() && !starts_keyword(lines[pos + 1].text)) {
    ++pos;
    std::istringstream in(lines[pos].text);
    std::string token;
    while (in >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        out.emplace_back(v, lines[pos].number);
      } catch (const std::exception&) {
        fail(lines[pos].number, "expected a number, found '" + token + "'");
      }
    }
  }
  return out;
}

std::size_t node_index(double id, std::size_t n, std::size_t line) {
  if (id < 1 || id > static_cast<double>(n) || id != std::floor(id)) {
    fail(line, "node id " + std::to_string(id) + " outside 1.." + std::to_string(n));
  }
  return static_cast<std::size_t>(id) - 1;
}

}  // namespace

Instance parse_tsplib_cvrp(std::string_view text, std::size_t k) {
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      std::string t = trim(raw);
      if (!t.empty()) lines.push_back({number, std::move(t)});
    }
  }

  std::string name;
  std::optional<std::size_t> dimension;
  std::optional<double> capacity;
  std::string weight_type;
  std::string weight_format;
  std::vector<std::array<double, 2>> coords;
  std::vector<bool> have_coord;
  std::vector<double> explicit_weights;
  std::size_t explicit_line = 0;
  std::vector<double> demand;
  std::vector<std::size_t> depots;

  auto need_dimension = [&](std::size_t line) {
    if (!dimension) fail(line, "section before DIMENSION");
    return *dimension;
  };

  for (std::size_t pos = 0; pos < lines.size(); ++pos) {
    const Line& line = lines[pos];
    std::string key = line.text, value;
    if (const auto colon = line.text.find(':'); colon != std::string::npos) {
      key = trim(line.text.substr(0, colon));
      value = trim(line.text.substr(colon + 1));
    }
    if (key == "EOF") break;
    if (key == "NAME") {
      name = value;
    } else if (key == "TYPE") {
      if (value != "CVRP") fail(line.number, "unsupported TYPE '" + value + "'");
    } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE") {
    } else if (key == "DIMENSION") {
      try {
        dimension = std::stoul(value);
      } catch (const std::exception&) {
        fail(line.number, "bad DIMENSION '" + value + "'");
      }
    } else if (key == "CAPACITY") {
      try {
        capacity = std::stod(value);
      } catch (const std::exception&) {
        fail(line.number, "bad CAPACITY '" + value + "'");
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value != "EUC_2D" && value != "EXPLICIT") {
        fail(line.number, "unsupported EDGE_WEIGHT_TYPE '" + value + "'");
      }
      weight_type = value;
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      if (value != "FULL_MATRIX") {
        fail(line.number, "unsupported EDGE_WEIGHT_FORMAT '" + value + "'");
      }
      weight_format = value;
    } else if (key == "NODE_COORD_SECTION") {
      const std::size_t n = need_dimension(line.number);
      coords.assign(n, {0.0, 0.0});
      have_coord.assign(n, false);
      const auto nums = section_numbers(lines, pos);
      if (nums.size() % 3 != 0) fail(line.number, "NODE_COORD_SECTION needs id x y triples");
      for (std::size_t i = 0; i < nums.size(); i += 3) {
        const std::size_t v = node_index(nums[i].first, n, nums[i].second);
        coords[v] = {nums[i + 1].first, nums[i + 2].first};
        have_coord[v] = true;
      }
    } else if (key == "EDGE_WEIGHT_SECTION") {
      const std::size_t n = need_dimension(line.number);
      explicit_line = line.number;
      for (const auto& [v, _] : section_numbers(lines, pos)) explicit_weights.push_back(v);
      if (explicit_weights.size() != n * n) {
        fail(line.number, "EDGE_WEIGHT_SECTION has " +
                              std::to_string(explicit_weights.size()) +
                              " entries, FULL_MATRIX needs " + std::to_string(n * n));
      }
    } else if (key == "DEMAND_SECTION") {
      const std::size_t n = need_dimension(line.number);
      demand.assign(n, 0.0);
      const auto nums = section_numbers(lines, pos);
      if (nums.size() % 2 != 0) fail(line.number, "DEMAND_SECTION needs id demand pairs");
      for (std::size_t i = 0; i < nums.size(); i += 2) {
        demand[node_index(nums[i].first, n, nums[i].second)] = nums[i + 1].first;
      }
    } else if (key == "DEPOT_SECTION") {
      const std::size_t n = need_dimension(line.number);
      for (const auto& [v, at] : section_numbers(lines, pos)) {
        if (v == -1) break;
        depots.push_back(node_index(v, n, at));
      }
    } else {
      fail(line.number, "unknown keyword '" + key + "'");
    }
  }

  const std::size_t last = lines.empty() ? 0 : lines.back().number;
  if (!dimension || *dimension == 0) fail(last, "missing DIMENSION");
  if (!capacity) fail(last, "missing CAPACITY");
  if (weight_type.empty()) fail(last, "missing EDGE_WEIGHT_TYPE");
  const std::size_t n = *dimension;

  Instance inst;
  inst.capacity = capacity;
  inst.demand = demand.empty() ? std::vector<double>(n, 0.0) : demand;
  for (std::size_t v = 1; v <= n; ++v) inst.labels.push_back(std::to_string(v));

  if (weight_type == "EUC_2D") {
    if (coords.empty()) fail(last, "EUC_2D needs NODE_COORD_SECTION");
    for (std::size_t v = 0; v < n; ++v) {
      if (!have_coord[v]) fail(last, "node " + std::to_string(v + 1) + " has no coordinates");
    }
    inst.d = DistanceMatrix(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double dx = coords[a][0] - coords[b][0];
        const double dy = coords[a][1] - coords[b][1];
        // TSPLIB nint.
        inst.d.set_symmetric(a, b, std::floor(std::sqrt(dx * dx + dy * dy) + 0.5));
      }
    }
  } else {
    if (weight_format.empty()) fail(last, "EXPLICIT needs EDGE_WEIGHT_FORMAT");
    if (explicit_weights.empty()) fail(explicit_line ? explicit_line : last,
                                       "EXPLICIT needs EDGE_WEIGHT_SECTION");
    inst.d = DistanceMatrix(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) inst.d(a, b) = explicit_weights[a * n + b];
  }

  if (k == 0) {
    static const std::regex trucks(R"(-k(\d+))");
    std::smatch m;
    k = std::regex_search(name, m, trucks) ? std::stoul(m[1].str()) : 1;
  }
  inst.k = std::min(k, n);

  inst.annotations["source"] = "tsplib";
  if (!name.empty()) inst.annotations["name"] = name;
  if (!depots.empty()) {
    std::string list;
    for (std::size_t v : depots) {
      if (!list.empty()) list += ",";
      list += std::to_string(v + 1);
    }
    inst.annotations["tsplib_depot"] = list;
  }
  return inst;
}

Instance import_tsplib_cvrp(const std::filesystem::path& path, std::size_t k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_tsplib_cvrp(text.str(), k);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace medforest
