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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace qtrack {

// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

std::array<std::uint8_t, 20> sha1(std::string_view data);

std::string to_hex(const std::uint8_t* data, std::size_t size);

// True for exactly `length` characters drawn from [0-9a-f].
bool is_lower_hex(std::string_view text, std::size_t length);

}  // namespace qtrack
