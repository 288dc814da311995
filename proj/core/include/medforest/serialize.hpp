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

#include <nlohmann/json.hpp>

#include <string>

#include "medforest/local_search.hpp"
#include "medforest/metric.hpp"
#include "medforest/oracles.hpp"
#include "medforest/pipeline.hpp"
#include "medforest/router.hpp"

namespace medforest {

using Json = nlohmann::ordered_json;

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json to_json(const DepotSet& s);
DepotSet depot_set_from_json(const Json& j);

Json to_json(const ValidationReport& report);
Json to_json(const ObjectiveReport& report);
Json to_json(const RoutePlan& plan, std::optional<double> lower_bound = {});
RoutePlan route_plan_from_json(const Json& j);
Json to_json(const PlanValidation& v);

Json to_json(const SearchTrace& trace);
/// One accepted move as a JSON line: iteration, D, A, phi_before, phi_after.
Json to_json(const AcceptedMove& move);
std::string trace_json_lines(const SearchTrace& trace);

Json to_json(const OracleResult& result);
Json to_json(const DivergenceReport& report);

/// `trace_file` is recorded verbatim when the trace was written separately.
Json to_json(const SolveResult& result, const std::string& trace_file = {});

/// Fixed formatting used for every file the tool writes (2-space indent,
/// trailing newline).
std::string dump(const Json& j);

}  // namespace medforest
