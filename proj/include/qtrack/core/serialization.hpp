// Copyright 2026 The qtrack Authors
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

// Canonical JSON form of the domain types. Field names are snake_case and
// match the struct members; timestamps are integer milliseconds. The same
// form is used on disk and on the wire.
//
// Decoding is strict about types and required fields and throws
// qtrack::Error(kInvalidArgument) naming the offending field. Unknown fields
// are ignored.

#include <string>
#include <string_view>

#include <json.hpp>

#include "qtrack/core/types.hpp"

namespace qtrack {

using Json = nlohmann::json;

void to_json(Json& j, const Experiment& v);
void to_json(Json& j, const MetricPoint& v);
void to_json(Json& j, const ArtifactRef& v);
void to_json(Json& j, const CircuitRecord& v);
void to_json(Json& j, const QubitCalibration& v);
void to_json(Json& j, const GateCalibration& v);
void to_json(Json& j, const CalibrationSet& v);
void to_json(Json& j, const CompilationRecord& v);
void to_json(Json& j, const ExecutionRecord& v);
void to_json(Json& j, const Provenance& v);
void to_json(Json& j, const Run& v);
void to_json(Json& j, const QubitDelta& v);
void to_json(Json& j, const GateDelta& v);
void to_json(Json& j, const CalibrationDiff& v);

void from_json(const Json& j, Experiment& v);
void from_json(const Json& j, MetricPoint& v);
void from_json(const Json& j, ArtifactRef& v);
void from_json(const Json& j, CircuitRecord& v);
void from_json(const Json& j, QubitCalibration& v);
void from_json(const Json& j, GateCalibration& v);
void from_json(const Json& j, CalibrationSet& v);
void from_json(const Json& j, CompilationRecord& v);
void from_json(const Json& j, ExecutionRecord& v);
void from_json(const Json& j, Provenance& v);
void from_json(const Json& j, Run& v);
void from_json(const Json& j, QubitDelta& v);
void from_json(const Json& j, GateDelta& v);
void from_json(const Json& j, CalibrationDiff& v);

// Compact single-line dump; keys sorted, UTF-8 passed through unescaped.
std::string dump_canonical(const Json& j);

// Parses `text`, mapping syntax errors to Error(kInvalidArgument).
Json parse_json(std::string_view text);

template <typename T>
T decode(std::string_view text) {
  return parse_json(text).get<T>();
}

template <typename T>
std::string encode(const T& value) {
  return dump_canonical(Json(value));
}

}  // namespace qtrack
