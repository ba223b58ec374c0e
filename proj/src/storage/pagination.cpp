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

#include "qtrack/storage/pagination.hpp"

#include <charconv>

#include "qtrack/core/hashing.hpp"
#include "qtrack/error.hpp"

namespace qtrack::storage {
namespace {

constexpr std::string_view kTokenVersion = "p1";

std::string signature(std::size_t offset, std::string_view query_key) {
  std::string input = "qtrack-page|";
  input.append(query_key);
  input += "|" + std::to_string(offset);
  return sha256_hex(input).substr(0, 16);
}

[[noreturn]] void invalid_token() {
  fail(ErrorCode::kInvalidToken, "invalid page token");
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string encode_page_token(std::size_t offset, std::string_view query_key) {
  std::string plain = std::string(kTokenVersion) + "." + std::to_string(offset) +
                      "." + signature(offset, query_key);
  return to_hex(reinterpret_cast<const std::uint8_t*>(plain.data()),
                plain.size());
}

std::size_t decode_page_token(std::string_view token, std::string_view query_key) {
  if (token.empty() || token.size() % 2 != 0 || token.size() > 256) {
    invalid_token();
  }
  std::string plain;
  plain.reserve(token.size() / 2);
  for (std::size_t i = 0; i < token.size(); i += 2) {
    int hi = hex_value(token[i]);
    int lo = hex_value(token[i + 1]);
    if (hi < 0 || lo < 0) invalid_token();
    plain.push_back(static_cast<char>(hi * 16 + lo));
  }

  auto first = plain.find('.');
  auto second = plain.find('.', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) invalid_token();
  if (std::string_view(plain).substr(0, first) != kTokenVersion) invalid_token();

  auto digits = std::string_view(plain).substr(first + 1, second - first - 1);
  std::size_t offset = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), offset);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    invalid_token();
  }
  if (std::to_string(offset) != digits) invalid_token();
  if (std::string_view(plain).substr(second + 1) != signature(offset, query_key)) {
    invalid_token();
  }
  return offset;
}

RunPage paginate(std::vector<Run> ordered, std::size_t max_results,
                 const std::optional<std::string>& page_token,
                 std::string_view query_key) {
  if (max_results < 1 || max_results > kMaxResultsCap) {
    fail(ErrorCode::kInvalidArgument,
         "max_results must be between 1 and " + std::to_string(kMaxResultsCap));
  }
  std::size_t offset = 0;
  if (page_token) offset = decode_page_token(*page_token, query_key);
  if (offset > ordered.size()) invalid_token();

  RunPage page;
  const std::size_t end = std::min(ordered.size(), offset + max_results);
  page.items.assign(std::make_move_iterator(ordered.begin() + offset),
                    std::make_move_iterator(ordered.begin() + end));
  if (end < ordered.size()) page.next_page_token = encode_page_token(end, query_key);
  return page;
}

}  // namespace qtrack::storage
