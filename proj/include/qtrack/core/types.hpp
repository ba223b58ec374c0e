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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qtrack {

enum class Lifecycle { kActive, kDeleted };

enum class RunStatus { kRunning, kFinished, kFailed, kKilled };

enum class CircuitFormat { kOpenQasm3Text, kVendorOpaque };

std::string_view to_string(Lifecycle value);
std::string_view to_string(RunStatus value);
std::string_view to_string(CircuitFormat value);

std::optional<Lifecycle> parse_lifecycle(std::string_view text);
std::optional<RunStatus> parse_run_status(std::string_view text);
std::optional<CircuitFormat> parse_circuit_format(std::string_view text);

inline bool is_terminal(RunStatus status) {
  return status != RunStatus::kRunning;
}

// RUNNING may move to any terminal state; terminal states are final.
inline bool is_legal_transition(RunStatus from, RunStatus to) {
  return from == RunStatus::kRunning && is_terminal(to);
}

using StringMap = std::map<std::string, std::string>;

struct Experiment {
  std::string experiment_id;
  std::string name;
  std::int64_t creation_time = 0;
  Lifecycle lifecycle = Lifecycle::kActive;
  StringMap tags;

  friend bool operator==(const Experiment&, const Experiment&) = default;
};

struct MetricPoint {
  std::string key;
  double value = 0.0;
  std::int64_t timestamp = 0;
  std::int64_t step = 0;

  friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

struct ArtifactRef {
  std::string run_id;
  std::string path;
  std::string sha256;
  std::uint64_t size_bytes = 0;
  std::string media_type;

  friend bool operator==(const ArtifactRef&, const ArtifactRef&) = default;
};

struct CircuitRecord {
  std::string name;
  std::int64_t qubit_count = 1;
  std::int64_t depth = 0;
  std::map<std::string, std::int64_t> gate_counts;
  CircuitFormat format = CircuitFormat::kOpenQasm3Text;
  std::string source;
  std::string digest;

  friend bool operator==(const CircuitRecord&, const CircuitRecord&) = default;
};

struct QubitCalibration {
  std::int64_t qubit_index = 0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double readout_fidelity = 0.0;

  friend bool operator==(const QubitCalibration&,
                         const QubitCalibration&) = default;
};

struct GateCalibration {
  std::string gate_name;
  std::vector<std::int64_t> qubit_indices;
  double fidelity = 0.0;

  friend bool operator==(const GateCalibration&,
                         const GateCalibration&) = default;
};

struct CalibrationSet {
  std::string calibration_set_id;
  std::string device_name;
  std::int64_t qubit_count = 0;
  std::int64_t timestamp = 0;
  std::vector<QubitCalibration> qubits;
  std::vector<GateCalibration> gates;

  friend bool operator==(const CalibrationSet&,
                         const CalibrationSet&) = default;
};

struct CompilationRecord {
  std::string compiler_name;
  std::string compiler_version;
  std::int64_t optimization_level = 0;
  std::string input_digest;
  std::string output_digest;
  std::map<std::int64_t, std::int64_t> qubit_mapping;

  friend bool operator==(const CompilationRecord&,
                         const CompilationRecord&) = default;
};

struct ExecutionRecord {
  std::int64_t shots = 0;
  std::map<std::string, std::int64_t> counts;
  std::string backend_name;
  std::optional<std::string> calibration_set_id;
  std::int64_t submitted_at = 0;
  std::int64_t completed_at = 0;

  friend bool operator==(const ExecutionRecord&,
                         const ExecutionRecord&) = default;
};

// The four provenance categories attached to a run. The calibration set is
// stored in full so runs can be diffed without another lookup.
struct Provenance {
  std::optional<CircuitRecord> circuit;
  std::optional<CompilationRecord> compilation;
  std::optional<CalibrationSet> calibration;
  std::optional<ExecutionRecord> execution;

  bool empty() const {
    return !circuit && !compilation && !calibration && !execution;
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Run {
  std::string run_id;
  std::string experiment_id;
  RunStatus status = RunStatus::kRunning;
  std::int64_t start_time = 0;
  std::optional<std::int64_t> end_time;
  StringMap params;
  StringMap tags;
  std::map<std::string, std::vector<MetricPoint>> metrics;
  std::vector<ArtifactRef> artifacts;
  Provenance provenance;

  friend bool operator==(const Run&, const Run&) = default;
};

struct QubitDelta {
  std::int64_t qubit_index = 0;
  double d_t1_us = 0.0;
  double d_t2_us = 0.0;
  double d_readout_fidelity = 0.0;

  friend bool operator==(const QubitDelta&, const QubitDelta&) = default;
};

struct GateDelta {
  std::string gate_name;
  std::vector<std::int64_t> qubit_indices;
  double d_fidelity = 0.0;

  friend bool operator==(const GateDelta&, const GateDelta&) = default;
};

struct CalibrationDiff {
  std::string base_id;
  std::string other_id;
  std::vector<QubitDelta> qubit_deltas;
  std::vector<GateDelta> gate_deltas;
  std::vector<std::int64_t> added_qubits;
  std::vector<std::int64_t> removed_qubits;

  friend bool operator==(const CalibrationDiff&,
                         const CalibrationDiff&) = default;
};

// Latest point of a metric history: maximum by (step, timestamp, value).
// Returns nullptr for an empty history.
const MetricPoint* latest_point(const std::vector<MetricPoint>& history);

}  // namespace qtrack
