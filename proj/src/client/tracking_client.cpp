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

#include "qtrack/client/tracking_client.hpp"

#include <httplib.h>

#include <cctype>

namespace qtrack::client {
namespace {

ErrorCode local_code(server::ApiErrorCode code) {
  switch (code) {
    case server::ApiErrorCode::kResourceNotFound: return ErrorCode::kNotFound;
    case server::ApiErrorCode::kResourceConflict: return ErrorCode::kConflict;
    case server::ApiErrorCode::kInvalidParameter: return ErrorCode::kInvalidArgument;
    case server::ApiErrorCode::kInvalidState: return ErrorCode::kInvalidState;
    default: return ErrorCode::kInternal;
  }
}

struct ParsedUri {
  std::string scheme_host_port;
  std::string prefix;
};

ParsedUri parse_uri(const std::string& uri) {
  constexpr std::string_view kScheme = "http://";
  if (uri.rfind(kScheme, 0) != 0) {
    fail(ErrorCode::kInvalidArgument, "tracking URI must start with http://: " + uri);
  }
  auto slash = uri.find('/', kScheme.size());
  ParsedUri out;
  out.scheme_host_port = uri.substr(0, slash);
  if (out.scheme_host_port.size() == kScheme.size()) {
    fail(ErrorCode::kInvalidArgument, "tracking URI has no host: " + uri);
  }
  if (slash != std::string::npos) {
    out.prefix = uri.substr(slash);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  return out;
}

}  // namespace

ApiFailure::ApiFailure(int http_status, server::ApiError error)
    : Error(local_code(error.code),
            std::string(server::to_string(error.code)) + ": " + error.message),
      http_status_(http_status),
      error_(std::move(error)) {}

std::string url_encode(std::string_view text, bool keep_slash) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '.' || c == '_' || c == '~' || c == '-' ||
        (keep_slash && c == '/')) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

struct TrackingClient::Impl {
  std::string uri;
  std::string prefix;
  httplib::Client http;

  Impl(std::string u, const ParsedUri& parsed)
      : uri(std::move(u)), prefix(parsed.prefix), http(parsed.scheme_host_port) {}
};

TrackingClient::TrackingClient(std::string uri, std::optional<std::string> auth_token) {
  auto parsed = parse_uri(uri);
  impl_ = std::make_unique<Impl>(std::move(uri), parsed);
  impl_->http.set_keep_alive(true);
  impl_->http.set_connection_timeout(5);
  impl_->http.set_read_timeout(60);
  if (auth_token) impl_->http.set_bearer_token_auth(*auth_token);
}

TrackingClient::~TrackingClient() = default;
TrackingClient::TrackingClient(TrackingClient&&) noexcept = default;
TrackingClient& TrackingClient::operator=(TrackingClient&&) noexcept = default;

const std::string& TrackingClient::uri() const { return impl_->uri; }

RawResponse TrackingClient::request(const std::string& method, const std::string& path,
                                    const std::string& body,
                                    const std::string& content_type) {
  const auto full = impl_->prefix + path;
  httplib::Result result;
  auto& http = impl_->http;
  if (method == "GET") {
    result = http.Get(full);
  } else if (method == "POST") {
    result = http.Post(full, body, content_type);
  } else if (method == "PUT") {
    result = http.Put(full, body, content_type);
  } else if (method == "PATCH") {
    result = http.Patch(full, body, content_type);
  } else if (method == "DELETE") {
    result = http.Delete(full, body, content_type);
  } else {
    fail(ErrorCode::kInvalidArgument, "unsupported method " + method);
  }
  if (!result) {
    fail(ErrorCode::kIo, "cannot reach tracking server at " + impl_->uri + ": " +
                             httplib::to_string(result.error()));
  }
  return {result->status, result->body, result->get_header_value("Content-Type")};
}

namespace {

Json checked(const RawResponse& response) {
  if (response.status >= 200 && response.status < 300) {
    return response.body.empty() ? Json::object() : parse_json(response.body);
  }
  std::optional<server::ApiError> error;
  try {
    error = server::ApiError::from_json(parse_json(response.body));
  } catch (const Error&) {
  }
  if (!error) {
    error = server::ApiError::from_status(response.status, "HTTP " +
                                                               std::to_string(response.status));
  }
  throw ApiFailure(response.status, std::move(*error));
}

}  // namespace

Json TrackingClient::call(const std::string& method, const std::string& path, const Json& body) {
  return checked(request(method, path, dump_canonical(body)));
}

Json TrackingClient::call(const std::string& method, const std::string& path) {
  return checked(request(method, path));
}

bool TrackingClient::healthy() {
  auto response = request("GET", "/healthz");
  return response.status == 200 && response.body == "ok";
}

Experiment TrackingClient::create_experiment(const std::string& name, const StringMap& tags) {
  Json body{{"name", name}};
  if (!tags.empty()) body["tags"] = tags;
  return call("POST", "/api/v1/experiments", body).get<Experiment>();
}

std::optional<Experiment> TrackingClient::find_experiment(const std::string& name) {
  try {
    return call("GET", "/api/v1/experiments?name=" + url_encode(name, false)).get<Experiment>();
  } catch (const ApiFailure& e) {
    if (e.code() == ErrorCode::kNotFound) return std::nullopt;
    throw;
  }
}

Experiment TrackingClient::get_experiment(const std::string& experiment_id) {
  return call("GET", "/api/v1/experiments/" + url_encode(experiment_id, false))
      .get<Experiment>();
}

std::vector<Experiment> TrackingClient::list_experiments() {
  return call("GET", "/api/v1/experiments").at("experiments").get<std::vector<Experiment>>();
}

Experiment TrackingClient::set_experiment(const std::string& name) {
  if (auto found = find_experiment(name)) return *found;
  try {
    return create_experiment(name);
  } catch (const ApiFailure& e) {
    // Lost a creation race; the winner's record is the answer.
    if (e.code() != ErrorCode::kConflict) throw;
    if (auto found = find_experiment(name)) return *found;
    throw;
  }
}

Run TrackingClient::create_run(const std::string& experiment_id, const StringMap& tags) {
  Json body{{"experiment_id", experiment_id}};
  if (!tags.empty()) body["tags"] = tags;
  return call("POST", "/api/v1/runs", body).get<Run>();
}

Run TrackingClient::get_run(const std::string& run_id) {
  return call("GET", "/api/v1/runs/" + url_encode(run_id, false)).get<Run>();
}

Run TrackingClient::update_run(const std::string& run_id, std::optional<RunStatus> status,
                               std::optional<std::int64_t> end_time) {
  Json body = Json::object();
  if (status) body["status"] = to_string(*status);
  if (end_time) body["end_time"] = *end_time;
  return call("PATCH", "/api/v1/runs/" + url_encode(run_id, false), body).get<Run>();
}

void TrackingClient::log_param(const std::string& run_id, const std::string& key,
                               const std::string& value) {
  call("POST", "/api/v1/runs/" + url_encode(run_id, false) + "/params",
       Json{{"key", key}, {"value", value}});
}

void TrackingClient::set_tag(const std::string& run_id, const std::string& key,
                             const std::string& value) {
  call("POST", "/api/v1/runs/" + url_encode(run_id, false) + "/tags",
       Json{{"key", key}, {"value", value}});
}

namespace {

Json point_body(const MetricPoint& point) {
  Json j = point;
  if (point.timestamp == 0) j.erase("timestamp");
  return j;
}

}  // namespace

void TrackingClient::log_metric(const std::string& run_id, const MetricPoint& point) {
  call("POST", "/api/v1/runs/" + url_encode(run_id, false) + "/metrics", point_body(point));
}

void TrackingClient::log_metrics(const std::string& run_id,
                                 const std::vector<MetricPoint>& points) {
  Json body{{"points", Json::array()}};
  for (const auto& p : points) body["points"].push_back(point_body(p));
  call("POST", "/api/v1/runs/" + url_encode(run_id, false) + "/metrics/batch", body);
}

std::vector<MetricPoint> TrackingClient::metric_history(const std::string& run_id,
                                                        const std::string& key) {
  return call("GET", "/api/v1/runs/" + url_encode(run_id, false) + "/metrics/" +
                         url_encode(key, false))
      .at("points")
      .get<std::vector<MetricPoint>>();
}

ArtifactRef TrackingClient::put_artifact(const std::string& run_id, const std::string& path,
                                         const std::string& bytes,
                                         const std::string& media_type) {
  return checked(request("PUT",
                         "/api/v1/runs/" + url_encode(run_id, false) + "/artifacts/" +
                             url_encode(path, true),
                         bytes, media_type))
      .get<ArtifactRef>();
}

std::string TrackingClient::get_artifact(const std::string& run_id, const std::string& path) {
  auto response = request("GET", "/api/v1/runs/" + url_encode(run_id, false) + "/artifacts/" +
                                     url_encode(path, true));
  if (response.status != 200) checked(response);
  return response.body;
}

std::vector<ArtifactRef> TrackingClient::list_artifacts(const std::string& run_id) {
  return call("GET", "/api/v1/runs/" + url_encode(run_id, false) + "/artifacts")
      .at("artifacts")
      .get<std::vector<ArtifactRef>>();
}

Provenance TrackingClient::log_provenance(const std::string& run_id, const Json& records) {
  return call("POST", "/api/v1/runs/" + url_encode(run_id, false) + "/provenance", records)
      .at("provenance")
      .get<Provenance>();
}

storage::RunPage TrackingClient::search_runs(const SearchQuery& query) {
  Json body{{"experiment_ids", query.experiment_ids}};
  if (!query.filter.empty()) body["filter"] = query.filter;
  if (!query.order_by.empty()) body["order_by"] = query.order_by;
  if (query.max_results) body["max_results"] = *query.max_results;
  if (query.page_token) body["page_token"] = *query.page_token;
  auto j = call("POST", "/api/v1/runs/search", body);
  storage::RunPage page;
  page.items = j.at("runs").get<std::vector<Run>>();
  if (auto t = j.find("next_page_token"); t != j.end() && t->is_string()) {
    page.next_page_token = t->get<std::string>();
  }
  return page;
}

std::vector<Run> TrackingClient::search_all(SearchQuery query) {
  std::vector<Run> out;
  if (!query.max_results) query.max_results = 1000;
  for (;;) {
    auto page = search_runs(query);
    out.insert(out.end(), std::make_move_iterator(page.items.begin()),
               std::make_move_iterator(page.items.end()));
    if (!page.next_page_token) return out;
    query.page_token = std::move(page.next_page_token);
  }
}

}  // namespace qtrack::client
