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

#include "qtrack/core/serialization.hpp"

#include <cmath>
#include <limits>

#include "qtrack/error.hpp"

namespace qtrack {
namespace {

[[noreturn]] void bad_field(std::string_view field, std::string_view what) {
  fail(ErrorCode::kInvalidArgument,
       std::string(field) + ": " + std::string(what));
}

const Json& require(const Json& j, const char* field) {
  if (!j.is_object()) bad_field(field, "enclosing value is not an object");
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) bad_field(field, "missing");
  return *it;
}

const Json* optional_field(const Json& j, const char* field) {
  if (!j.is_object()) bad_field(field, "enclosing value is not an object");
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string as_string(const Json& v, std::string_view field) {
  if (!v.is_string()) bad_field(field, "expected string");
  return v.get<std::string>();
}

std::int64_t as_int(const Json& v, std::string_view field) {
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(
                std::numeric_limits<std::int64_t>::max())) {
      bad_field(field, "integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) bad_field(field, "expected integer");
  return v.get<std::int64_t>();
}

// Numbers, plus the spellings "NaN", "Infinity" and "-Infinity" so that
// non-finite values can reach validation instead of failing as bad syntax.
double as_double(const Json& v, std::string_view field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  bad_field(field, "expected number");
}

StringMap as_string_map(const Json& v, std::string_view field) {
  if (!v.is_object()) bad_field(field, "expected object");
  StringMap out;
  for (const auto& [key, value] : v.items()) {
    out.emplace(key, as_string(value, std::string(field) + "." + key));
  }
  return out;
}

std::vector<std::int64_t> as_int_list(const Json& v, std::string_view field) {
  if (!v.is_array()) bad_field(field, "expected array");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_int(e, field));
  return out;
}

template <typename T>
std::vector<T> as_list(const Json& v, std::string_view field) {
  if (!v.is_array()) bad_field(field, "expected array");
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e.get<T>());
  return out;
}

}  // namespace

// --- encoding ---------------------------------------------------------------

void to_json(Json& j, const Experiment& v) {
  j = Json{{"experiment_id", v.experiment_id},
           {"name", v.name},
           {"creation_time", v.creation_time},
           {"lifecycle", to_string(v.lifecycle)},
           {"tags", v.tags}};
}

void to_json(Json& j, const MetricPoint& v) {
  j = Json{{"key", v.key},
           {"value", v.value},
           {"timestamp", v.timestamp},
           {"step", v.step}};
}

void to_json(Json& j, const ArtifactRef& v) {
  j = Json{{"run_id", v.run_id},
           {"path", v.path},
           {"sha256", v.sha256},
           {"size_bytes", v.size_bytes},
           {"media_type", v.media_type}};
}

void to_json(Json& j, const CircuitRecord& v) {
  j = Json{{"name", v.name},
           {"qubit_count", v.qubit_count},
           {"depth", v.depth},
           {"gate_counts", v.gate_counts},
           {"format", to_string(v.format)},
           {"source", v.source},
           {"digest", v.digest}};
}

void to_json(Json& j, const QubitCalibration& v) {
  j = Json{{"qubit_index", v.qubit_index},
           {"t1_us", v.t1_us},
           {"t2_us", v.t2_us},
           {"readout_fidelity", v.readout_fidelity}};
}

void to_json(Json& j, const GateCalibration& v) {
  j = Json{{"gate_name", v.gate_name},
           {"qubit_indices", v.qubit_indices},
           {"fidelity", v.fidelity}};
}

void to_json(Json& j, const CalibrationSet& v) {
  j = Json{{"calibration_set_id", v.calibration_set_id},
           {"device_name", v.device_name},
           {"qubit_count", v.qubit_count},
           {"timestamp", v.timestamp},
           {"qubits", v.qubits},
           {"gates", v.gates}};
}

void to_json(Json& j, const CompilationRecord& v) {
  Json mapping = Json::object();
  for (const auto& [logical, physical] : v.qubit_mapping) {
    mapping[std::to_string(logical)] = physical;
  }
  j = Json{{"compiler_name", v.compiler_name},
           {"compiler_version", v.compiler_version},
           {"optimization_level", v.optimization_level},
           {"input_digest", v.input_digest},
           {"output_digest", v.output_digest},
           {"qubit_mapping", std::move(mapping)}};
}

void to_json(Json& j, const ExecutionRecord& v) {
  j = Json{{"shots", v.shots},
           {"counts", v.counts},
           {"backend_name", v.backend_name},
           {"submitted_at", v.submitted_at},
           {"completed_at", v.completed_at}};
  if (v.calibration_set_id) j["calibration_set_id"] = *v.calibration_set_id;
}

void to_json(Json& j, const Provenance& v) {
  j = Json::object();
  if (v.circuit) j["circuit"] = *v.circuit;
  if (v.compilation) j["compilation"] = *v.compilation;
  if (v.calibration) j["calibration"] = *v.calibration;
  if (v.execution) j["execution"] = *v.execution;
}

void to_json(Json& j, const Run& v) {
  Json metrics = Json::object();
  for (const auto& [key, history] : v.metrics) metrics[key] = history;
  j = Json{{"run_id", v.run_id},
           {"experiment_id", v.experiment_id},
           {"status", to_string(v.status)},
           {"start_time", v.start_time},
           {"params", v.params},
           {"tags", v.tags},
           {"metrics", std::move(metrics)},
           {"artifacts", v.artifacts},
           {"provenance", v.provenance}};
  if (v.end_time) j["end_time"] = *v.end_time;
}

void to_json(Json& j, const QubitDelta& v) {
  j = Json{{"qubit_index", v.qubit_index},
           {"d_t1_us", v.d_t1_us},
           {"d_t2_us", v.d_t2_us},
           {"d_readout_fidelity", v.d_readout_fidelity}};
}

void to_json(Json& j, const GateDelta& v) {
  j = Json{{"gate_name", v.gate_name},
           {"qubit_indices", v.qubit_indices},
           {"d_fidelity", v.d_fidelity}};
}

void to_json(Json& j, const CalibrationDiff& v) {
  j = Json{{"base_id", v.base_id},
           {"other_id", v.other_id},
           {"qubit_deltas", v.qubit_deltas},
           {"gate_deltas", v.gate_deltas},
           {"added_qubits", v.added_qubits},
           {"removed_qubits", v.removed_qubits}};
}

// --- decoding ---------------------------------------------------------------

void from_json(const Json& j, Experiment& v) {
  v.experiment_id = as_string(require(j, "experiment_id"), "experiment_id");
  v.name = as_string(require(j, "name"), "name");
  v.creation_time = as_int(require(j, "creation_time"), "creation_time");
  auto lifecycle =
      parse_lifecycle(as_string(require(j, "lifecycle"), "lifecycle"));
  if (!lifecycle) bad_field("lifecycle", "expected active|deleted");
  v.lifecycle = *lifecycle;
  v.tags.clear();
  if (auto* t = optional_field(j, "tags")) v.tags = as_string_map(*t, "tags");
}

void from_json(const Json& j, MetricPoint& v) {
  v.key = as_string(require(j, "key"), "key");
  v.value = as_double(require(j, "value"), "value");
  v.timestamp = as_int(require(j, "timestamp"), "timestamp");
  v.step = 0;
  if (auto* s = optional_field(j, "step")) v.step = as_int(*s, "step");
}

void from_json(const Json& j, ArtifactRef& v) {
  v.run_id = as_string(require(j, "run_id"), "run_id");
  v.path = as_string(require(j, "path"), "path");
  v.sha256 = as_string(require(j, "sha256"), "sha256");
  auto size = as_int(require(j, "size_bytes"), "size_bytes");
  if (size < 0) bad_field("size_bytes", "must be non-negative");
  v.size_bytes = static_cast<std::uint64_t>(size);
  v.media_type = as_string(require(j, "media_type"), "media_type");
}

void from_json(const Json& j, CircuitRecord& v) {
  v.name = as_string(require(j, "name"), "name");
  v.qubit_count = as_int(require(j, "qubit_count"), "qubit_count");
  v.depth = 0;
  if (auto* d = optional_field(j, "depth")) v.depth = as_int(*d, "depth");
  v.gate_counts.clear();
  if (auto* g = optional_field(j, "gate_counts")) {
    if (!g->is_object()) bad_field("gate_counts", "expected object");
    for (const auto& [gate, count] : g->items()) {
      v.gate_counts.emplace(gate, as_int(count, "gate_counts." + gate));
    }
  }
  auto format = parse_circuit_format(as_string(require(j, "format"), "format"));
  if (!format) bad_field("format", "expected openqasm3-text|vendor-opaque");
  v.format = *format;
  v.source = as_string(require(j, "source"), "source");
  v.digest.clear();
  if (auto* d = optional_field(j, "digest")) v.digest = as_string(*d, "digest");
}

void from_json(const Json& j, QubitCalibration& v) {
  v.qubit_index = as_int(require(j, "qubit_index"), "qubit_index");
  v.t1_us = as_double(require(j, "t1_us"), "t1_us");
  v.t2_us = as_double(require(j, "t2_us"), "t2_us");
  v.readout_fidelity =
      as_double(require(j, "readout_fidelity"), "readout_fidelity");
}

void from_json(const Json& j, GateCalibration& v) {
  v.gate_name = as_string(require(j, "gate_name"), "gate_name");
  v.qubit_indices = as_int_list(require(j, "qubit_indices"), "qubit_indices");
  v.fidelity = as_double(require(j, "fidelity"), "fidelity");
}

void from_json(const Json& j, CalibrationSet& v) {
  v.calibration_set_id =
      as_string(require(j, "calibration_set_id"), "calibration_set_id");
  v.device_name = as_string(require(j, "device_name"), "device_name");
  v.qubit_count = as_int(require(j, "qubit_count"), "qubit_count");
  v.timestamp = as_int(require(j, "timestamp"), "timestamp");
  v.qubits = as_list<QubitCalibration>(require(j, "qubits"), "qubits");
  v.gates.clear();
  if (auto* g = optional_field(j, "gates")) {
    v.gates = as_list<GateCalibration>(*g, "gates");
  }
}

void from_json(const Json& j, CompilationRecord& v) {
  v.compiler_name = as_string(require(j, "compiler_name"), "compiler_name");
  v.compiler_version =
      as_string(require(j, "compiler_version"), "compiler_version");
  v.optimization_level =
      as_int(require(j, "optimization_level"), "optimization_level");
  v.input_digest = as_string(require(j, "input_digest"), "input_digest");
  v.output_digest = as_string(require(j, "output_digest"), "output_digest");
  v.qubit_mapping.clear();
  if (auto* m = optional_field(j, "qubit_mapping")) {
    if (!m->is_object()) bad_field("qubit_mapping", "expected object");
    for (const auto& [logical, physical] : m->items()) {
      std::int64_t index = 0;
      try {
        std::size_t used = 0;
        index = std::stoll(logical, &used);
        if (used != logical.size()) throw std::invalid_argument(logical);
      } catch (const std::exception&) {
        bad_field("qubit_mapping", "keys must be integer indices");
      }
      v.qubit_mapping.emplace(index, as_int(physical, "qubit_mapping"));
    }
  }
}

void from_json(const Json& j, ExecutionRecord& v) {
  v.shots = as_int(require(j, "shots"), "shots");
  v.counts.clear();
  const auto& counts = require(j, "counts");
  if (!counts.is_object()) bad_field("counts", "expected object");
  for (const auto& [bits, count] : counts.items()) {
    v.counts.emplace(bits, as_int(count, "counts." + bits));
  }
  v.backend_name = as_string(require(j, "backend_name"), "backend_name");
  v.calibration_set_id.reset();
  if (auto* c = optional_field(j, "calibration_set_id")) {
    v.calibration_set_id = as_string(*c, "calibration_set_id");
  }
  v.submitted_at = as_int(require(j, "submitted_at"), "submitted_at");
  v.completed_at = as_int(require(j, "completed_at"), "completed_at");
}

void from_json(const Json& j, Provenance& v) {
  if (!j.is_object()) bad_field("provenance", "expected object");
  v = Provenance{};
  if (auto* c = optional_field(j, "circuit")) v.circuit = c->get<CircuitRecord>();
  if (auto* c = optional_field(j, "compilation")) {
    v.compilation = c->get<CompilationRecord>();
  }
  if (auto* c = optional_field(j, "calibration")) {
    v.calibration = c->get<CalibrationSet>();
  }
  if (auto* e = optional_field(j, "execution")) {
    v.execution = e->get<ExecutionRecord>();
  }
}

void from_json(const Json& j, Run& v) {
  v.run_id = as_string(require(j, "run_id"), "run_id");
  v.experiment_id = as_string(require(j, "experiment_id"), "experiment_id");
  auto status = parse_run_status(as_string(require(j, "status"), "status"));
  if (!status) bad_field("status", "expected RUNNING|FINISHED|FAILED|KILLED");
  v.status = *status;
  v.start_time = as_int(require(j, "start_time"), "start_time");
  v.end_time.reset();
  if (auto* e = optional_field(j, "end_time")) v.end_time = as_int(*e, "end_time");
  v.params.clear();
  if (auto* p = optional_field(j, "params")) v.params = as_string_map(*p, "params");
  v.tags.clear();
  if (auto* t = optional_field(j, "tags")) v.tags = as_string_map(*t, "tags");
  v.metrics.clear();
  if (auto* m = optional_field(j, "metrics")) {
    if (!m->is_object()) bad_field("metrics", "expected object");
    for (const auto& [key, history] : m->items()) {
      v.metrics.emplace(key, as_list<MetricPoint>(history, "metrics." + key));
    }
  }
  v.artifacts.clear();
  if (auto* a = optional_field(j, "artifacts")) {
    v.artifacts = as_list<ArtifactRef>(*a, "artifacts");
  }
  v.provenance = Provenance{};
  if (auto* p = optional_field(j, "provenance")) v.provenance = p->get<Provenance>();
}

void from_json(const Json& j, QubitDelta& v) {
  v.qubit_index = as_int(require(j, "qubit_index"), "qubit_index");
  v.d_t1_us = as_double(require(j, "d_t1_us"), "d_t1_us");
  v.d_t2_us = as_double(require(j, "d_t2_us"), "d_t2_us");
  v.d_readout_fidelity =
      as_double(require(j, "d_readout_fidelity"), "d_readout_fidelity");
}

void from_json(const Json& j, GateDelta& v) {
  v.gate_name = as_string(require(j, "gate_name"), "gate_name");
  v.qubit_indices = as_int_list(require(j, "qubit_indices"), "qubit_indices");
  v.d_fidelity = as_double(require(j, "d_fidelity"), "d_fidelity");
}

void from_json(const Json& j, CalibrationDiff& v) {
  v.base_id = as_string(require(j, "base_id"), "base_id");
  v.other_id = as_string(require(j, "other_id"), "other_id");
  v.qubit_deltas = as_list<QubitDelta>(require(j, "qubit_deltas"), "qubit_deltas");
  v.gate_deltas = as_list<GateDelta>(require(j, "gate_deltas"), "gate_deltas");
  v.added_qubits = as_int_list(require(j, "added_qubits"), "added_qubits");
  v.removed_qubits = as_int_list(require(j, "removed_qubits"), "removed_qubits");
}

std::string dump_canonical(const Json& j) {
  try {
    return j.dump();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kEncoding, e.what());
  }
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace qtrack
