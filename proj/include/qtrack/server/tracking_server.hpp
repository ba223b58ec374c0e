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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "qtrack/storage/store.hpp"

namespace qtrack::server {

inline constexpr std::string_view kDefaultAddress = "127.0.0.1:5600";
inline constexpr std::size_t kMaxBatchPoints = 1000;

struct ServerOptions {
  // When set, every /api/ request must carry "Authorization: Bearer <token>".
  std::optional<std::string> auth_token;
  // Static assets served under "/" (the dashboard build).
  std::optional<std::filesystem::path> ui_dir;
  std::size_t worker_threads = 16;
  std::function<std::int64_t()> clock;  // defaults to wall-clock milliseconds
};

// Splits "host:port"; throws Error(kInvalidArgument) on malformed input.
std::pair<std::string, int> parse_address(const std::string& address);

// HTTP/1.1 JSON API over one store. The store must outlive the server.
class TrackingServer {
 public:
  explicit TrackingServer(storage::Store& store, ServerOptions options = {});
  ~TrackingServer();
  TrackingServer(const TrackingServer&) = delete;
  TrackingServer& operator=(const TrackingServer&) = delete;

  // Binds and serves until stop(); returns false if the address cannot be
  // bound.
  bool listen(const std::string& host, int port);

  // Binds `port` (an ephemeral port when 0) and returns the bound port, or -1
  // on failure; then call listen_after_bind() to serve.
  int bind(const std::string& host, int port);
  int bind_to_any_port(const std::string& host) { return bind(host, 0); }
  bool listen_after_bind();

  void wait_until_ready() const;
  bool is_running() const;

  // Stops accepting connections and waits for in-flight requests.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qtrack::server
