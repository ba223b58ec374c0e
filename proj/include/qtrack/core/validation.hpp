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

#include <string>
#include <vector>

#include "qtrack/core/types.hpp"

namespace qtrack {

struct Violation {
  std::string field;
  std::string rule;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Validation failures are data. An empty list means the value is valid.
struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has_rule(std::string_view rule) const;
  std::string summary() const;
};

inline constexpr std::size_t kMaxKeyBytes = 250;
inline constexpr std::size_t kMaxExperimentNameBytes = 500;

ValidationResult validate_execution_record(const ExecutionRecord& rec);
ValidationResult validate_calibration(const CalibrationSet& set);
ValidationResult validate_circuit(const CircuitRecord& rec);
ValidationResult validate_compilation(const CompilationRecord& rec);
ValidationResult validate_metric_point(const MetricPoint& point);

// Validates every present category; field names are prefixed with the
// category ("execution.shots").
ValidationResult validate_provenance(const Provenance& provenance);

ValidationResult validate_experiment_name(const std::string& name);

// Keys for params, tags and metrics: non-empty, at most kMaxKeyBytes.
ValidationResult validate_key(const std::string& field, const std::string& key);

}  // namespace qtrack
