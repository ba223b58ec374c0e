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

#include "qtrack/core/types.hpp"

#include <tuple>

#include "qtrack/error.hpp"

namespace qtrack {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNotFound: return "not found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidState: return "invalid state";
    case ErrorCode::kInvalidToken: return "invalid page token";
    case ErrorCode::kEncoding: return "encoding error";
    case ErrorCode::kVersionMismatch: return "version mismatch";
    case ErrorCode::kLocked: return "store locked";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown";
}

std::string_view to_string(Lifecycle value) {
  return value == Lifecycle::kActive ? "active" : "deleted";
}

std::string_view to_string(RunStatus value) {
  switch (value) {
    case RunStatus::kRunning: return "RUNNING";
    case RunStatus::kFinished: return "FINISHED";
    case RunStatus::kFailed: return "FAILED";
    case RunStatus::kKilled: return "KILLED";
  }
  return "RUNNING";
}

std::string_view to_string(CircuitFormat value) {
  return value == CircuitFormat::kOpenQasm3Text ? "openqasm3-text"
                                                 : "vendor-opaque";
}

std::optional<Lifecycle> parse_lifecycle(std::string_view text) {
  if (text == "active") return Lifecycle::kActive;
  if (text == "deleted") return Lifecycle::kDeleted;
  return std::nullopt;
}

std::optional<RunStatus> parse_run_status(std::string_view text) {
  if (text == "RUNNING") return RunStatus::kRunning;
  if (text == "FINISHED") return RunStatus::kFinished;
  if (text == "FAILED") return RunStatus::kFailed;
  if (text == "KILLED") return RunStatus::kKilled;
  return std::nullopt;
}

std::optional<CircuitFormat> parse_circuit_format(std::string_view text) {
  if (text == "openqasm3-text") return CircuitFormat::kOpenQasm3Text;
  if (text == "vendor-opaque") return CircuitFormat::kVendorOpaque;
  return std::nullopt;
}

const MetricPoint* latest_point(const std::vector<MetricPoint>& history) {
  const MetricPoint* best = nullptr;
  for (const auto& p : history) {
    if (best == nullptr ||
        std::tie(best->step, best->timestamp, best->value) <
            std::tie(p.step, p.timestamp, p.value)) {
      best = &p;
    }
  }
  return best;
}

}  // namespace qtrack
