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

#include "file_io.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "qtrack/core/ids.hpp"
#include "qtrack/error.hpp"

namespace qtrack::storage::io {
namespace {

// `#` never appears in an encoded key, id, or digest file name.
constexpr std::string_view kTempMarker = "#tmp-";

[[noreturn]] void io_error(const std::string& what,
                           const std::filesystem::path& path) {
  fail(ErrorCode::kIo, what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("write", path);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

UniqueFd& UniqueFd::operator=(UniqueFd&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

UniqueFd::~UniqueFd() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  UniqueFd fd(::open(path.c_str(), O_RDONLY | O_CLOEXEC));
  if (!fd.valid()) {
    if (errno == ENOENT) return std::nullopt;
    io_error("open", path);
  }
  std::string out;
  char buf[1 << 16];
  for (;;) {
    ssize_t n = ::read(fd.get(), buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("read", path);
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  auto tmp = path;
  tmp += std::string(kTempMarker) + new_id().substr(0, 12);
  {
    UniqueFd fd(::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644));
    if (!fd.valid()) io_error("create", tmp);
    write_all(fd.get(), data, tmp);
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    int saved = errno;
    ::unlink(tmp.c_str());
    errno = saved;
    io_error("rename", path);
  }
}

void append_file(const std::filesystem::path& path, std::string_view data) {
  UniqueFd fd(::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
  if (!fd.valid()) io_error("open for append", path);
  write_all(fd.get(), data, path);
}

void repair_jsonl_tail(const std::filesystem::path& path) {
  auto content = read_file(path);
  if (!content || content->empty() || content->back() == '\n') return;
  auto keep = content->rfind('\n');
  auto size = keep == std::string::npos ? 0 : keep + 1;
  if (::truncate(path.c_str(), static_cast<off_t>(size)) != 0) {
    io_error("truncate", path);
  }
}

std::vector<std::string_view> complete_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  for (;;) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) break;
    if (end > pos) lines.push_back(content.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

bool is_temp_file(const std::filesystem::path& path) {
  return path.filename().string().find(kTempMarker) != std::string::npos;
}

}  // namespace qtrack::storage::io
