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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtrack/core/types.hpp"

namespace qtrack::storage {

inline constexpr std::size_t kDefaultMaxResults = 100;
inline constexpr std::size_t kMaxResultsCap = 1000;

struct RunPage {
  std::vector<Run> items;
  std::optional<std::string> next_page_token;
};

// Page tokens are opaque to clients. Each one is bound to the query that
// produced it through `query_key`; replaying it against a different query or
// altering any byte makes it invalid (Error(kInvalidToken)).
std::string encode_page_token(std::size_t offset, std::string_view query_key);
std::size_t decode_page_token(std::string_view token, std::string_view query_key);

// Slices an already ordered result list. `max_results` must be in
// [1, kMaxResultsCap] (Error(kInvalidArgument) otherwise).
RunPage paginate(std::vector<Run> ordered, std::size_t max_results,
                 const std::optional<std::string>& page_token,
                 std::string_view query_key);

}  // namespace qtrack::storage
