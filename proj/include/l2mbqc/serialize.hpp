// Copyright 2026 The l2mbqc Authors
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

#include <string>
#include <vector>

#include <json.hpp>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/mbqc.hpp"
#include "l2mbqc/onequbit.hpp"
#include "l2mbqc/pfd.hpp"
#include "l2mbqc/qsp.hpp"
#include "l2mbqc/sim.hpp"

namespace l2mbqc {

using Json = nlohmann::ordered_json;

/// Malformed JSON or a document that violates a schema. The message names
/// the byte offset (syntax) or the JSON pointer (schema) of the problem.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses text, reporting syntax errors with their byte offset.
Json parse_json(const std::string& text);

Json to_json(const BooleanFunction& f);
BooleanFunction function_from_json(const Json& j);

Json to_json(const PeriodicDecomposition& d);
PeriodicDecomposition decomposition_from_json(const Json& j);

Json to_json(const QspAngles& a);
QspAngles angles_from_json(const Json& j);

Json to_json(const OneQubitProgram& prog);
OneQubitProgram program_from_json(const Json& j);

Json to_json(const MeasurementSchedule& s);
/// Checks the schema and then validate(); throws ParseError either way.
MeasurementSchedule schedule_from_json(const Json& j);
std::string serialize(const MeasurementSchedule& s);
MeasurementSchedule deserialize(const std::string& text);

Json to_json(const ResourceReport& r);
Json to_json(const SimulationReport& r);
/// One header line and one row per input.
std::string to_csv(const SimulationReport& r);
Json to_json(const Table1Row& r);

std::string default_table2_path();
/// Checked-in angle sets for Mod_{p,0}, one per p.
std::vector<QspAngles> load_table2(const std::string& path = default_table2_path());

}  // namespace l2mbqc
