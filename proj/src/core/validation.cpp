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

#include "qtrack/core/validation.hpp"

#include <cmath>
#include <set>
#include <tuple>

#include "qtrack/core/digest.hpp"
#include "qtrack/core/hashing.hpp"
#include "qtrack/core/ids.hpp"

namespace qtrack {
namespace {

class Collector {
 public:
  explicit Collector(std::string prefix = {}) : prefix_(std::move(prefix)) {}

  void add(const std::string& field, const std::string& rule,
           const std::string& message) {
    result_.violations.push_back({prefix_ + field, rule, message});
  }

  ValidationResult take() { return std::move(result_); }

 private:
  std::string prefix_;
  ValidationResult result_;
};

std::string num(double v) {
  std::string s = std::to_string(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

bool in_unit_interval(double f) { return f > 0.0 && f <= 1.0; }

void append(ValidationResult& into, ValidationResult from,
            const std::string& prefix) {
  for (auto& v : from.violations) {
    v.field = prefix + v.field;
    into.violations.push_back(std::move(v));
  }
}

}  // namespace

bool ValidationResult::has_rule(std::string_view rule) const {
  for (const auto& v : violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.field + ": " + v.message;
  }
  return out;
}

ValidationResult validate_execution_record(const ExecutionRecord& rec) {
  Collector c;
  if (rec.shots < 1) {
    c.add("shots", "shots ≥ 1", "shots ≥ 1 (got " + std::to_string(rec.shots) + ")");
  }

  std::int64_t sum = 0;
  bool overflow = false;
  std::optional<std::size_t> width;
  bool mixed_width = false;
  for (const auto& [bits, count] : rec.counts) {
    if (count < 0) {
      c.add("counts", "counts non-negative",
            "count for \"" + bits + "\" is negative");
    } else if (sum > INT64_MAX - count) {
      overflow = true;
    } else {
      sum += count;
    }
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos) {
      c.add("counts", "bitstring keys drawn from {0,1}",
            "key \"" + bits + "\" is not a non-empty {0,1} bitstring");
    }
    if (!width) {
      width = bits.size();
    } else if (*width != bits.size()) {
      mixed_width = true;
    }
  }
  if (mixed_width) {
    c.add("counts", "bitstring keys share one length",
          "bitstring keys have different lengths");
  }
  if (overflow) {
    c.add("counts", "counts sum equals shots", "counts sum overflows");
  } else if (sum != rec.shots) {
    c.add("counts", "counts sum equals shots",
          "counts sum " + std::to_string(sum) + " ≠ shots " +
              std::to_string(rec.shots));
  }
  if (rec.completed_at < rec.submitted_at) {
    c.add("completed_at", "completed_at ≥ submitted_at",
          "completed_at " + std::to_string(rec.completed_at) +
              " precedes submitted_at " + std::to_string(rec.submitted_at));
  }
  if (rec.calibration_set_id && !is_uuid(*rec.calibration_set_id)) {
    c.add("calibration_set_id", "calibration_set_id is a UUID",
          "\"" + *rec.calibration_set_id + "\" is not a UUID");
  }
  return c.take();
}

ValidationResult validate_calibration(const CalibrationSet& set) {
  Collector c;
  if (!is_uuid(set.calibration_set_id)) {
    c.add("calibration_set_id", "calibration_set_id is a UUID",
          "\"" + set.calibration_set_id + "\" is not a UUID");
  }
  if (set.qubit_count < 1) {
    c.add("qubit_count", "qubit_count ≥ 1",
          "qubit_count ≥ 1 (got " + std::to_string(set.qubit_count) + ")");
  }
  if (static_cast<std::int64_t>(set.qubits.size()) != set.qubit_count) {
    c.add("qubits", "one record per qubit",
          "expected " + std::to_string(set.qubit_count) +
              " per-qubit records, got " + std::to_string(set.qubits.size()));
  }

  std::set<std::int64_t> seen;
  for (const auto& q : set.qubits) {
    const auto where = "qubits[" + std::to_string(q.qubit_index) + "]";
    if (!seen.insert(q.qubit_index).second) {
      c.add("qubits", "distinct indices",
            "qubit_index " + std::to_string(q.qubit_index) + " repeated");
    }
    if (q.qubit_index < 0 || q.qubit_index >= set.qubit_count) {
      c.add(where + ".qubit_index", "qubit index in range",
            "qubit_index " + std::to_string(q.qubit_index) +
                " outside 0.." + std::to_string(set.qubit_count - 1));
    }
    if (!(q.t1_us > 0.0) || !std::isfinite(q.t1_us)) {
      c.add(where + ".t1_us", "t1_us > 0", "t1_us " + num(q.t1_us) + " ≤ 0");
    }
    if (!(q.t2_us > 0.0) || !std::isfinite(q.t2_us)) {
      c.add(where + ".t2_us", "t2_us > 0", "t2_us " + num(q.t2_us) + " ≤ 0");
    }
    if (!in_unit_interval(q.readout_fidelity)) {
      c.add(where + ".readout_fidelity", "fidelity in (0,1]",
            "readout_fidelity " + num(q.readout_fidelity) +
                " outside (0,1]");
    }
  }

  std::set<std::tuple<std::string, std::vector<std::int64_t>>> gate_keys;
  for (std::size_t i = 0; i < set.gates.size(); ++i) {
    const auto& g = set.gates[i];
    const auto where = "gates[" + std::to_string(i) + "]";
    if (!in_unit_interval(g.fidelity)) {
      c.add(where + ".fidelity", "fidelity in (0,1]",
            g.gate_name + " fidelity " + num(g.fidelity) + " outside (0,1]");
    }
    if (g.gate_name.empty()) {
      c.add(where + ".gate_name", "gate_name non-empty", "gate_name is empty");
    }
    if (g.qubit_indices.empty()) {
      c.add(where + ".qubit_indices", "gate qubit indices in range",
            "gate acts on no qubits");
    }
    for (auto idx : g.qubit_indices) {
      if (idx < 0 || idx >= set.qubit_count) {
        c.add(where + ".qubit_indices", "gate qubit indices in range",
              "qubit index " + std::to_string(idx) + " out of range");
      }
    }
    if (!gate_keys.emplace(g.gate_name, g.qubit_indices).second) {
      c.add(where, "distinct gate entries",
            "duplicate entry for gate " + g.gate_name);
    }
  }
  return c.take();
}

ValidationResult validate_circuit(const CircuitRecord& rec) {
  Collector c;
  if (rec.qubit_count < 1) {
    c.add("qubit_count", "qubit_count ≥ 1",
          "qubit_count ≥ 1 (got " + std::to_string(rec.qubit_count) + ")");
  }
  if (rec.depth < 0) {
    c.add("depth", "depth ≥ 0", "depth is negative");
  }
  for (const auto& [gate, count] : rec.gate_counts) {
    if (count < 0) {
      c.add("gate_counts", "gate counts non-negative",
            "count for " + gate + " is negative");
    }
  }
  if (!is_valid_utf8(rec.source)) {
    c.add("source", "source is valid UTF-8", "source is not valid UTF-8");
  } else if (circuit_digest(rec.source, rec.format) != rec.digest) {
    c.add("digest", "digest matches source",
          "digest does not match canonical source");
  }
  return c.take();
}

ValidationResult validate_compilation(const CompilationRecord& rec) {
  Collector c;
  if (rec.optimization_level < 0) {
    c.add("optimization_level", "optimization_level ≥ 0",
          "optimization_level is negative");
  }
  if (!is_lower_hex(rec.input_digest, 64)) {
    c.add("input_digest", "64-char lowercase hex", "input_digest malformed");
  }
  if (!is_lower_hex(rec.output_digest, 64)) {
    c.add("output_digest", "64-char lowercase hex", "output_digest malformed");
  }
  std::set<std::int64_t> physical;
  for (const auto& [logical, phys] : rec.qubit_mapping) {
    if (logical < 0 || phys < 0) {
      c.add("qubit_mapping", "qubit indices non-negative",
            "mapping " + std::to_string(logical) + "→" +
                std::to_string(phys) + " has a negative index");
    }
    if (!physical.insert(phys).second) {
      c.add("qubit_mapping", "qubit_mapping injective",
            "physical qubit " + std::to_string(phys) + " mapped twice");
    }
  }
  return c.take();
}

ValidationResult validate_metric_point(const MetricPoint& point) {
  auto result = validate_key("key", point.key);
  if (!std::isfinite(point.value)) {
    result.violations.push_back(
        {"value", "value is finite", "metric value must be finite"});
  }
  return result;
}

ValidationResult validate_provenance(const Provenance& provenance) {
  ValidationResult out;
  if (provenance.circuit) {
    append(out, validate_circuit(*provenance.circuit), "circuit.");
  }
  if (provenance.compilation) {
    append(out, validate_compilation(*provenance.compilation), "compilation.");
  }
  if (provenance.calibration) {
    append(out, validate_calibration(*provenance.calibration), "calibration.");
  }
  if (provenance.execution) {
    append(out, validate_execution_record(*provenance.execution), "execution.");
  }
  return out;
}

ValidationResult validate_experiment_name(const std::string& name) {
  Collector c;
  if (name.empty()) {
    c.add("name", "name non-empty", "experiment name is empty");
  } else if (name.size() > kMaxExperimentNameBytes) {
    c.add("name", "name ≤ 500 bytes", "experiment name exceeds 500 bytes");
  }
  if (!is_valid_utf8(name)) {
    c.add("name", "valid UTF-8", "experiment name is not valid UTF-8");
  }
  return c.take();
}

ValidationResult validate_key(const std::string& field, const std::string& key) {
  Collector c;
  if (key.empty()) {
    c.add(field, "key non-empty", "key is empty");
  } else if (key.size() > kMaxKeyBytes) {
    c.add(field, "key ≤ 250 bytes", "key exceeds 250 bytes");
  }
  if (!is_valid_utf8(key)) {
    c.add(field, "valid UTF-8", "key is not valid UTF-8");
  }
  return c.take();
}

}  // namespace qtrack
