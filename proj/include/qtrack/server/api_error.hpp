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

#include <optional>
#include <string>
#include <string_view>

#include "qtrack/core/serialization.hpp"
#include "qtrack/error.hpp"

namespace qtrack::server {

enum class ApiErrorCode {
  kResourceNotFound,
  kResourceConflict,
  kInvalidParameter,
  kInvalidState,
  kInternal,
  kUnauthenticated,
};

std::string_view to_string(ApiErrorCode code);
std::optional<ApiErrorCode> parse_api_error_code(std::string_view text);
int http_status(ApiErrorCode code);

// Body of every non-2xx response:
//   {"error_code": "...", "message": "...", "details": {...}}
// `details` is present only for parse errors ({"offset": n}) and validation
// failures ({"violations": [{"field", "rule", "message"}, ...]}).
struct ApiError {
  ApiErrorCode code = ApiErrorCode::kInternal;
  std::string message;
  Json details;  // null when absent

  int status() const { return http_status(code); }
  Json to_json() const;
  static std::optional<ApiError> from_json(const Json& j);

  static ApiError from_error(const Error& error);
  static ApiError from_status(int http_status, std::string message);
};

}  // namespace qtrack::server
