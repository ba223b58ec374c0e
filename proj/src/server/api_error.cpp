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

#include "qtrack/server/api_error.hpp"

namespace qtrack::server {

std::string_view to_string(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::kResourceNotFound: return "RESOURCE_NOT_FOUND";
    case ApiErrorCode::kResourceConflict: return "RESOURCE_CONFLICT";
    case ApiErrorCode::kInvalidParameter: return "INVALID_PARAMETER";
    case ApiErrorCode::kInvalidState: return "INVALID_STATE";
    case ApiErrorCode::kInternal: return "INTERNAL";
    case ApiErrorCode::kUnauthenticated: return "UNAUTHENTICATED";
  }
  return "INTERNAL";
}

std::optional<ApiErrorCode> parse_api_error_code(std::string_view text) {
  for (auto code : {ApiErrorCode::kResourceNotFound, ApiErrorCode::kResourceConflict,
                    ApiErrorCode::kInvalidParameter, ApiErrorCode::kInvalidState,
                    ApiErrorCode::kInternal, ApiErrorCode::kUnauthenticated}) {
    if (to_string(code) == text) return code;
  }
  return std::nullopt;
}

int http_status(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::kResourceNotFound: return 404;
    case ApiErrorCode::kResourceConflict: return 409;
    case ApiErrorCode::kInvalidParameter: return 400;
    case ApiErrorCode::kInvalidState: return 409;
    case ApiErrorCode::kInternal: return 500;
    case ApiErrorCode::kUnauthenticated: return 401;
  }
  return 500;
}

Json ApiError::to_json() const {
  Json j{{"error_code", to_string(code)}, {"message", message}};
  if (!details.is_null()) j["details"] = details;
  return j;
}

std::optional<ApiError> ApiError::from_json(const Json& j) {
  if (!j.is_object()) return std::nullopt;
  auto code_it = j.find("error_code");
  auto message_it = j.find("message");
  if (code_it == j.end() || !code_it->is_string() || message_it == j.end() ||
      !message_it->is_string()) {
    return std::nullopt;
  }
  auto code = parse_api_error_code(code_it->get<std::string>());
  if (!code) return std::nullopt;
  ApiError error{*code, message_it->get<std::string>(), nullptr};
  if (auto d = j.find("details"); d != j.end()) error.details = *d;
  return error;
}

ApiError ApiError::from_error(const Error& error) {
  ApiError out{ApiErrorCode::kInternal, error.what(), nullptr};
  switch (error.code()) {
    case ErrorCode::kNotFound:
      out.code = ApiErrorCode::kResourceNotFound;
      break;
    case ErrorCode::kConflict:
      out.code = ApiErrorCode::kResourceConflict;
      break;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidToken:
    case ErrorCode::kEncoding:
      out.code = ApiErrorCode::kInvalidParameter;
      break;
    case ErrorCode::kInvalidState:
      out.code = ApiErrorCode::kInvalidState;
      break;
    default:
      break;
  }
  if (const auto* parse = dynamic_cast<const ParseError*>(&error)) {
    out.message = "filter parse error at offset " + std::to_string(parse->offset()) +
                  ": " + parse->what();
    out.details = Json{{"offset", parse->offset()}};
  }
  return out;
}

ApiError ApiError::from_status(int http_status, std::string message) {
  ApiErrorCode code = ApiErrorCode::kInternal;
  if (http_status == 404) {
    code = ApiErrorCode::kResourceNotFound;
  } else if (http_status == 401) {
    code = ApiErrorCode::kUnauthenticated;
  } else if (http_status >= 400 && http_status < 500) {
    code = ApiErrorCode::kInvalidParameter;
  }
  return {code, std::move(message), nullptr};
}

}  // namespace qtrack::server
