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

// Blocking HTTP client for the /api/v1 protocol. One instance is meant for
// one thread; create one per thread for concurrent logging.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtrack/core/serialization.hpp"
#include "qtrack/core/types.hpp"
#include "qtrack/error.hpp"
#include "qtrack/server/api_error.hpp"
#include "qtrack/storage/pagination.hpp"

namespace qtrack::client {

inline constexpr std::string_view kDefaultTrackingUri = "http://127.0.0.1:5600";

// A non-2xx response. code() follows the server error code so callers can
// branch on kNotFound / kConflict / kInvalidState / kInvalidArgument.
class ApiFailure : public Error {
 public:
  ApiFailure(int http_status, server::ApiError error);

  int http_status() const { return http_status_; }
  const server::ApiError& api_error() const { return error_; }

 private:
  int http_status_;
  server::ApiError error_;
};

struct RawResponse {
  int status = 0;
  std::string body;
  std::string content_type;
};

struct SearchQuery {
  std::vector<std::string> experiment_ids;
  std::string filter;
  std::vector<std::string> order_by;
  std::optional<std::size_t> max_results;
  std::optional<std::string> page_token;
};

// Percent-encodes everything outside [A-Za-z0-9._~-]; '/' is kept when
// `keep_slash` is set.
std::string url_encode(std::string_view text, bool keep_slash);

class TrackingClient {
 public:
  // `uri` is "http://host:port" with an optional path prefix. Connection
  // failures surface as Error(kIo) naming the URI.
  explicit TrackingClient(std::string uri,
                          std::optional<std::string> auth_token = std::nullopt);
  ~TrackingClient();
  TrackingClient(TrackingClient&&) noexcept;
  TrackingClient& operator=(TrackingClient&&) noexcept;

  const std::string& uri() const;

  bool healthy();

  Experiment create_experiment(const std::string& name, const StringMap& tags = {});
  std::optional<Experiment> find_experiment(const std::string& name);
  Experiment get_experiment(const std::string& experiment_id);
  std::vector<Experiment> list_experiments();
  // GET by name, else POST.
  Experiment set_experiment(const std::string& name);

  Run create_run(const std::string& experiment_id, const StringMap& tags = {});
  Run get_run(const std::string& run_id);
  Run update_run(const std::string& run_id, std::optional<RunStatus> status,
                 std::optional<std::int64_t> end_time = std::nullopt);

  void log_param(const std::string& run_id, const std::string& key, const std::string& value);
  void set_tag(const std::string& run_id, const std::string& key, const std::string& value);
  // A point with timestamp 0 is sent without one; the server stamps it.
  void log_metric(const std::string& run_id, const MetricPoint& point);
  void log_metrics(const std::string& run_id, const std::vector<MetricPoint>& points);
  std::vector<MetricPoint> metric_history(const std::string& run_id, const std::string& key);

  ArtifactRef put_artifact(const std::string& run_id, const std::string& path,
                           const std::string& bytes,
                           const std::string& media_type = "application/octet-stream");
  std::string get_artifact(const std::string& run_id, const std::string& path);
  std::vector<ArtifactRef> list_artifacts(const std::string& run_id);

  // `records` holds any of circuit / compilation / calibration / execution.
  Provenance log_provenance(const std::string& run_id, const Json& records);

  storage::RunPage search_runs(const SearchQuery& query);
  // Follows page tokens to the end.
  std::vector<Run> search_all(SearchQuery query);

  // Unchecked request; the caller inspects the status.
  RawResponse request(const std::string& method, const std::string& path,
                      const std::string& body = {},
                      const std::string& content_type = "application/json");

 private:
  Json call(const std::string& method, const std::string& path, const Json& body);
  Json call(const std::string& method, const std::string& path);

  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qtrack::client
