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
#include <string_view>

#include "qtrack/core/types.hpp"

namespace qtrack {

bool is_valid_utf8(std::string_view text);

// Normal form used for circuit identity: `//` comment lines removed, each line
// trimmed, interior whitespace runs collapsed to a single space, empty lines
// dropped, remaining lines joined by '\n'. Idempotent.
// Throws Error(kEncoding) if `source` is not valid UTF-8.
std::string canonicalize_circuit(std::string_view source);

// SHA-256 over the canonical form, 64 lowercase hex characters. The format
// does not change the normalization.
std::string circuit_digest(std::string_view source, CircuitFormat format);

}  // namespace qtrack
