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

#include "qtrack/core/types.hpp"

namespace qtrack {

// Per-qubit and per-gate deltas computed as other − base. Qubits present in
// only one set land in added_qubits/removed_qubits; gates are matched on
// (gate_name, qubit_indices) and unmatched gates are ignored. All lists are
// sorted ascending by their key. The device names may differ.
CalibrationDiff diff_calibration(const CalibrationSet& base,
                                 const CalibrationSet& other);

// Deterministic stand-in for a vendor calibration payload. Output depends
// only on (seed, n_qubits) and always passes validate_calibration:
// t1_us in [20, 200], t2_us in (0, 2·t1_us], all fidelities in
// [0.90, 0.9999]. Gates are a single-qubit "prx" on every qubit and a "cz"
// on each nearest-neighbour pair of a linear chain.
// Throws Error(kInvalidArgument) when n_qubits < 1.
CalibrationSet generate_synthetic_calibration(std::int64_t seed,
                                              std::int64_t n_qubits);

}  // namespace qtrack
