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
#include <string>
#include <string_view>

namespace qtrack {

// Fresh 128-bit random id rendered as 32 lowercase hex characters.
std::string new_id();

bool is_valid_id(std::string_view id);

// Name-based UUID (RFC 4122 version 5, SHA-1) under a fixed qtrack namespace.
std::string uuid_v5(std::string_view name);

// Canonical 8-4-4-4-12 hex form, either case.
bool is_uuid(std::string_view text);

// Wall clock in milliseconds since the Unix epoch.
std::int64_t now_ms();

}  // namespace qtrack
