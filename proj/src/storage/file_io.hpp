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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtrack::storage::io {

class UniqueFd {
 public:
  UniqueFd() = default;
  explicit UniqueFd(int fd) : fd_(fd) {}
  UniqueFd(UniqueFd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  UniqueFd& operator=(UniqueFd&& other) noexcept;
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  ~UniqueFd();

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

// nullopt when the file does not exist.
std::optional<std::string> read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

// One O_APPEND write sequence per call; callers serialize appends to the
// same file.
void append_file(const std::filesystem::path& path, std::string_view data);

// Drops a trailing record that lacks its '\n' terminator (left by a crash
// mid-append).
void repair_jsonl_tail(const std::filesystem::path& path);

// Complete '\n'-terminated lines only; a torn tail is skipped.
std::vector<std::string_view> complete_lines(std::string_view content);

bool is_temp_file(const std::filesystem::path& path);

}  // namespace qtrack::storage::io
