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

#include "qtrack/core/calibration.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>

#include "qtrack/core/ids.hpp"
#include "qtrack/error.hpp"

namespace qtrack {
namespace {

using GateKey = std::pair<std::string, std::vector<std::int64_t>>;

// 2025-01-01T00:00:00Z
constexpr std::int64_t kSyntheticEpochMs = 1735689600000;

// Uniform double in [lo, hi) from the top 53 bits of one engine draw. Spelled
// out because std::uniform_real_distribution is not portable bit-for-bit.
double draw(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

}  // namespace

CalibrationDiff diff_calibration(const CalibrationSet& base,
                                 const CalibrationSet& other) {
  CalibrationDiff diff;
  diff.base_id = base.calibration_set_id;
  diff.other_id = other.calibration_set_id;

  std::map<std::int64_t, const QubitCalibration*> base_qubits;
  std::map<std::int64_t, const QubitCalibration*> other_qubits;
  for (const auto& q : base.qubits) base_qubits[q.qubit_index] = &q;
  for (const auto& q : other.qubits) other_qubits[q.qubit_index] = &q;

  for (const auto& [index, b] : base_qubits) {
    auto it = other_qubits.find(index);
    if (it == other_qubits.end()) {
      diff.removed_qubits.push_back(index);
      continue;
    }
    const auto* o = it->second;
    diff.qubit_deltas.push_back({index, o->t1_us - b->t1_us,
                                 o->t2_us - b->t2_us,
                                 o->readout_fidelity - b->readout_fidelity});
  }
  for (const auto& [index, o] : other_qubits) {
    if (!base_qubits.count(index)) diff.added_qubits.push_back(index);
  }

  std::map<GateKey, double> base_gates;
  std::map<GateKey, double> other_gates;
  for (const auto& g : base.gates) {
    base_gates[{g.gate_name, g.qubit_indices}] = g.fidelity;
  }
  for (const auto& g : other.gates) {
    other_gates[{g.gate_name, g.qubit_indices}] = g.fidelity;
  }
  for (const auto& [key, fidelity] : base_gates) {
    auto it = other_gates.find(key);
    if (it == other_gates.end()) continue;
    diff.gate_deltas.push_back({key.first, key.second, it->second - fidelity});
  }
  return diff;
}

CalibrationSet generate_synthetic_calibration(std::int64_t seed,
                                              std::int64_t n_qubits) {
  if (n_qubits < 1) {
    fail(ErrorCode::kInvalidArgument,
         "n_qubits must be at least 1 (got " + std::to_string(n_qubits) + ")");
  }
  const auto useed = static_cast<std::uint64_t>(seed);
  std::seed_seq seq{static_cast<std::uint32_t>(useed),
                    static_cast<std::uint32_t>(useed >> 32),
                    static_cast<std::uint32_t>(n_qubits),
                    static_cast<std::uint32_t>(
                        static_cast<std::uint64_t>(n_qubits) >> 32)};
  std::mt19937_64 rng(seq);

  CalibrationSet set;
  set.calibration_set_id = uuid_v5("qtrack/synthetic-calibration/" +
                                   std::to_string(seed) + "/" +
                                   std::to_string(n_qubits));
  set.device_name = "synthetic-q" + std::to_string(n_qubits);
  set.qubit_count = n_qubits;
  set.timestamp =
      kSyntheticEpochMs + static_cast<std::int64_t>(useed % 31536000) * 1000;

  set.qubits.reserve(static_cast<std::size_t>(n_qubits));
  for (std::int64_t i = 0; i < n_qubits; ++i) {
    QubitCalibration q;
    q.qubit_index = i;
    q.t1_us = draw(rng, 20.0, 200.0);
    q.t2_us = q.t1_us * draw(rng, 0.25, 2.0);
    q.readout_fidelity = draw(rng, 0.90, 0.9999);
    set.qubits.push_back(q);
  }
  for (std::int64_t i = 0; i < n_qubits; ++i) {
    set.gates.push_back({"prx", {i}, draw(rng, 0.99, 0.9999)});
  }
  for (std::int64_t i = 0; i + 1 < n_qubits; ++i) {
    set.gates.push_back({"cz", {i, i + 1}, draw(rng, 0.90, 0.995)});
  }
  return set;
}

}  // namespace qtrack
