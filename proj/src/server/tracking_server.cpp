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

#include "qtrack/server/tracking_server.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>

#include "qtrack/core/digest.hpp"
#include "qtrack/core/ids.hpp"
#include "qtrack/core/serialization.hpp"
#include "qtrack/core/validation.hpp"
#include "qtrack/query/search.hpp"
#include "qtrack/server/api_error.hpp"

namespace qtrack::server {
namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kRunId = "([0-9a-zA-Z_-]+)";

// Validation failures travel as a 400 carrying the violation list.
class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(ValidationResult result)
      : Error(ErrorCode::kInvalidArgument, "validation failed: " + result.summary()),
        result_(std::move(result)) {}

  const ValidationResult& result() const { return result_; }

 private:
  ValidationResult result_;
};

void require_valid(ValidationResult result) {
  if (!result.ok()) throw ValidationFailure(std::move(result));
}

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = kJson;
};

Reply json_reply(int status, const Json& j) {
  return {status, dump_canonical(j), kJson};
}

void write_error(httplib::Response& res, const ApiError& error) {
  res.status = error.status();
  res.set_content(dump_canonical(error.to_json()), kJson);
}

Json body_object(const httplib::Request& req) {
  auto j = parse_json(req.body);
  if (!j.is_object()) fail(ErrorCode::kInvalidArgument, "request body must be a JSON object");
  return j;
}

std::string require_string(const Json& body, const char* field) {
  auto it = body.find(field);
  if (it == body.end() || !it->is_string()) {
    fail(ErrorCode::kInvalidArgument, std::string(field) + ": expected string");
  }
  return it->get<std::string>();
}

StringMap optional_string_map(const Json& body, const char* field) {
  StringMap out;
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) return out;
  if (!it->is_object()) fail(ErrorCode::kInvalidArgument, std::string(field) + ": expected object");
  for (const auto& [key, value] : it->items()) {
    if (!value.is_string()) {
      fail(ErrorCode::kInvalidArgument, std::string(field) + "." + key + ": expected string");
    }
    require_valid(validate_key(field, key));
    out.emplace(key, value.get<std::string>());
  }
  return out;
}

std::string run_id_from(const httplib::Request& req) {
  auto id = req.matches[1].str();
  if (!is_valid_id(id)) fail(ErrorCode::kNotFound, "run " + id + " not found");
  return id;
}

void require_running(const Run& run) {
  if (is_terminal(run.status)) {
    fail(ErrorCode::kInvalidState,
         "run " + run.run_id + " is " + std::string(to_string(run.status)));
  }
}

}  // namespace

std::pair<std::string, int> parse_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    fail(ErrorCode::kInvalidArgument, "address must look like host:port");
  }
  int port = 0;
  auto digits = std::string_view(address).substr(colon + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || port < 0 || port > 65535) {
    fail(ErrorCode::kInvalidArgument, "invalid port in " + address);
  }
  return {address.substr(0, colon), port};
}

struct TrackingServer::Impl {
  storage::Store& store;
  ServerOptions options;
  httplib::Server http;

  Impl(storage::Store& s, ServerOptions o) : store(s), options(std::move(o)) {
    if (!options.clock) options.clock = now_ms;
    const auto threads = std::max<std::size_t>(options.worker_threads, 2);
    http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    // Idle keep-alive connections hold a worker and delay stop().
    http.set_keep_alive_timeout(1);
    install_hooks();
    install_routes();
  }

  std::int64_t now() const { return options.clock(); }

  template <typename F>
  httplib::Server::Handler wrap(F handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        Reply reply = handler(req);
        res.status = reply.status;
        res.set_content(std::move(reply.body), reply.content_type);
      } catch (const ValidationFailure& e) {
        ApiError error{ApiErrorCode::kInvalidParameter, e.what(), Json::object()};
        error.details["violations"] = Json::array();
        for (const auto& v : e.result().violations) {
          error.details["violations"].push_back(
              {{"field", v.field}, {"rule", v.rule}, {"message", v.message}});
        }
        write_error(res, error);
      } catch (const Error& e) {
        write_error(res, ApiError::from_error(e));
      } catch (const Json::exception& e) {
        write_error(res, {ApiErrorCode::kInvalidParameter, e.what(), nullptr});
      } catch (const std::exception& e) {
        write_error(res, {ApiErrorCode::kInternal, e.what(), nullptr});
      }
    };
  }

  void install_hooks() {
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    http.set_pre_routing_handler([this](const httplib::Request& req,
                                        httplib::Response& res) {
      if (!options.auth_token || req.path.rfind("/api/", 0) != 0 ||
          req.method == "OPTIONS") {
        return httplib::Server::HandlerResponse::Unhandled;
      }
      if (req.get_header_value("Authorization") != "Bearer " + *options.auth_token) {
        write_error(res, {ApiErrorCode::kUnauthenticated, "missing or invalid bearer token",
                          nullptr});
        return httplib::Server::HandlerResponse::Handled;
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });
    http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      auto message = res.status == 404 ? "no route for " + req.method + " " + req.path
                                       : std::string(httplib::status_message(res.status));
      auto error = ApiError::from_status(res.status, message);
      res.set_content(dump_canonical(error.to_json()), kJson);
      return httplib::Server::HandlerResponse::Handled;
    });
    http.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
          write_error(res, {ApiErrorCode::kInternal, "unhandled server error", nullptr});
        });
    http.Options(".*", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, PATCH, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type, Authorization");
      res.status = 204;
    });
    if (options.ui_dir) http.set_mount_point("/", options.ui_dir->string());
  }

  void install_routes() {
    http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain");
    });

    http.Post("/api/v1/experiments", wrap([this](const httplib::Request& req) {
      auto body = body_object(req);
      auto name = require_string(body, "name");
      require_valid(validate_experiment_name(name));
      auto tags = optional_string_map(body, "tags");
      return json_reply(201, store.create_experiment(name, tags, now()));
    }));

    http.Get("/api/v1/experiments", wrap([this](const httplib::Request& req) {
      if (req.has_param("name")) {
        auto name = req.get_param_value("name");
        auto experiment = store.find_experiment_by_name(name);
        if (!experiment) fail(ErrorCode::kNotFound, "experiment \"" + name + "\" not found");
        return json_reply(200, *experiment);
      }
      return json_reply(200, Json{{"experiments", store.list_experiments()}});
    }));

    http.Get("/api/v1/experiments/([0-9a-zA-Z_-]+)", wrap([this](const httplib::Request& req) {
      return json_reply(200, store.get_experiment(req.matches[1].str()));
    }));

    http.Post("/api/v1/runs/search", wrap([this](const httplib::Request& req) {
      return search(body_object(req));
    }));

    http.Post("/api/v1/runs", wrap([this](const httplib::Request& req) {
      auto body = body_object(req);
      auto experiment = store.get_experiment(require_string(body, "experiment_id"));
      if (experiment.lifecycle != Lifecycle::kActive) {
        fail(ErrorCode::kInvalidState, "experiment " + experiment.experiment_id + " is deleted");
      }
      Run run;
      run.run_id = new_id();
      run.experiment_id = experiment.experiment_id;
      run.status = RunStatus::kRunning;
      run.start_time = now();
      run.tags = optional_string_map(body, "tags");
      store.put_run(run);
      return json_reply(201, store.get_run(run.run_id));
    }));

    http.Get(std::string("/api/v1/runs/") + kRunId, wrap([this](const httplib::Request& req) {
      return json_reply(200, store.get_run(run_id_from(req)));
    }));

    http.Patch(std::string("/api/v1/runs/") + kRunId, wrap([this](const httplib::Request& req) {
      return update_status(run_id_from(req), body_object(req));
    }));

    http.Post(std::string("/api/v1/runs/") + kRunId + "/params",
              wrap([this](const httplib::Request& req) {
                auto body = body_object(req);
                auto key = require_string(body, "key");
                auto value = require_string(body, "value");
                require_valid(validate_key("key", key));
                store.update_run(run_id_from(req), [&](Run& run) {
                  require_running(run);
                  auto [it, inserted] = run.params.emplace(key, value);
                  if (!inserted && it->second != value) {
                    fail(ErrorCode::kConflict, "param " + key + " already logged as \"" +
                                                   it->second + "\"");
                  }
                });
                return json_reply(200, Json::object());
              }));

    http.Post(std::string("/api/v1/runs/") + kRunId + "/tags",
              wrap([this](const httplib::Request& req) {
                auto body = body_object(req);
                auto key = require_string(body, "key");
                auto value = require_string(body, "value");
                require_valid(validate_key("key", key));
                store.update_run(run_id_from(req), [&](Run& run) {
                  require_running(run);
                  run.tags[key] = value;
                });
                return json_reply(200, Json::object());
              }));

    http.Post(std::string("/api/v1/runs/") + kRunId + "/metrics/batch",
              wrap([this](const httplib::Request& req) {
                auto body = body_object(req);
                auto it = body.find("points");
                if (it == body.end() || !it->is_array()) {
                  fail(ErrorCode::kInvalidArgument, "points: expected array");
                }
                if (it->size() > kMaxBatchPoints) {
                  fail(ErrorCode::kInvalidArgument,
                       "batch exceeds " + std::to_string(kMaxBatchPoints) + " points");
                }
                std::vector<MetricPoint> points;
                ValidationResult problems;
                for (const auto& raw : *it) {
                  points.push_back(metric_point_from(raw));
                  auto check = validate_metric_point(points.back());
                  problems.violations.insert(problems.violations.end(),
                                             check.violations.begin(), check.violations.end());
                }
                require_valid(std::move(problems));
                store.append_metrics(run_id_from(req), points, {.require_running = true});
                return json_reply(200, Json::object());
              }));

    http.Post(std::string("/api/v1/runs/") + kRunId + "/metrics",
              wrap([this](const httplib::Request& req) {
                auto point = metric_point_from(body_object(req));
                require_valid(validate_metric_point(point));
                store.append_metric(run_id_from(req), point, {.require_running = true});
                return json_reply(200, Json::object());
              }));

    http.Get(std::string("/api/v1/runs/") + kRunId + "/metrics/(.+)",
             wrap([this](const httplib::Request& req) {
               auto run_id = run_id_from(req);
               (void)store.get_run(run_id);
               return json_reply(200, Json{{"points", store.metric_history(run_id,
                                                                           req.matches[2].str())}});
             }));

    http.Post(std::string("/api/v1/runs/") + kRunId + "/provenance",
              wrap([this](const httplib::Request& req) {
                return attach_provenance(run_id_from(req), body_object(req));
              }));

    http.Get(std::string("/api/v1/runs/") + kRunId + "/artifacts",
             wrap([this](const httplib::Request& req) {
               return json_reply(200,
                                 Json{{"artifacts", store.list_artifacts(run_id_from(req))}});
             }));

    http.Put(std::string("/api/v1/runs/") + kRunId + "/artifacts/(.+)",
             wrap([this](const httplib::Request& req) {
               auto run_id = run_id_from(req);
               auto path = req.matches[2].str();
               if (!storage::is_valid_artifact_path(path)) {
                 fail(ErrorCode::kInvalidArgument, "invalid artifact path \"" + path + "\"");
               }
               auto media_type = req.get_header_value("Content-Type");
               return json_reply(201, store.put_artifact(run_id, path, req.body, media_type,
                                                         {.require_running = true}));
             }));

    http.Get(std::string("/api/v1/runs/") + kRunId + "/artifacts/(.+)",
             wrap([this](const httplib::Request& req) {
               auto [bytes, ref] = store.get_artifact(run_id_from(req), req.matches[2].str());
               return Reply{200, std::move(bytes), ref.media_type};
             }));
  }

  MetricPoint metric_point_from(const Json& raw) {
    if (!raw.is_object()) fail(ErrorCode::kInvalidArgument, "metric point must be an object");
    Json copy = raw;
    if (!copy.contains("timestamp") || copy["timestamp"].is_null()) copy["timestamp"] = now();
    return copy.get<MetricPoint>();
  }

  Reply update_status(const std::string& run_id, const Json& body) {
    std::optional<RunStatus> status;
    if (auto it = body.find("status"); it != body.end() && !it->is_null()) {
      if (!it->is_string()) fail(ErrorCode::kInvalidArgument, "status: expected string");
      status = parse_run_status(it->get<std::string>());
      if (!status) fail(ErrorCode::kInvalidArgument, "status: unknown value");
    }
    std::optional<std::int64_t> end_time;
    if (auto it = body.find("end_time"); it != body.end() && !it->is_null()) {
      if (!it->is_number_integer()) fail(ErrorCode::kInvalidArgument, "end_time: expected integer");
      end_time = it->get<std::int64_t>();
    }

    auto run = store.update_run(run_id, [&](Run& run) {
      if (status && *status != run.status) {
        if (!is_legal_transition(run.status, *status)) {
          fail(ErrorCode::kInvalidState, "illegal transition " +
                                             std::string(to_string(run.status)) + " → " +
                                             std::string(to_string(*status)));
        }
        run.status = *status;
        if (!end_time) run.end_time = std::max(now(), run.start_time);
      } else if (status && is_terminal(*status)) {
        fail(ErrorCode::kInvalidState,
             "run " + run.run_id + " is already " + std::string(to_string(run.status)));
      } else if (end_time && is_terminal(run.status)) {
        fail(ErrorCode::kInvalidState, "run " + run.run_id + " is already finished");
      }
      if (end_time) {
        if (run.status == RunStatus::kRunning) {
          fail(ErrorCode::kInvalidArgument, "end_time requires a terminal status");
        }
        if (*end_time < run.start_time) {
          fail(ErrorCode::kInvalidArgument, "end_time precedes start_time");
        }
        run.end_time = *end_time;
      }
    });
    return json_reply(200, run);
  }

  Reply attach_provenance(const std::string& run_id, const Json& body) {
    Provenance incoming = body.get<Provenance>();
    if (incoming.empty()) {
      fail(ErrorCode::kInvalidArgument,
           "expected at least one of circuit, compilation, calibration, execution");
    }
    if (incoming.circuit && incoming.circuit->digest.empty() &&
        is_valid_utf8(incoming.circuit->source)) {
      incoming.circuit->digest =
          circuit_digest(incoming.circuit->source, incoming.circuit->format);
    }
    require_valid(validate_provenance(incoming));

    auto run = store.update_run(run_id, [&](Run& run) {
      require_running(run);
      if (incoming.circuit) run.provenance.circuit = incoming.circuit;
      if (incoming.compilation) run.provenance.compilation = incoming.compilation;
      if (incoming.calibration) run.provenance.calibration = incoming.calibration;
      if (incoming.execution) run.provenance.execution = incoming.execution;
    });
    return json_reply(200, Json{{"provenance", run.provenance}});
  }

  Reply search(const Json& body) {
    query::SearchRequest request;
    auto ids = body.find("experiment_ids");
    if (ids == body.end() || !ids->is_array()) {
      fail(ErrorCode::kInvalidArgument, "experiment_ids: expected array");
    }
    for (const auto& id : *ids) {
      if (!id.is_string()) fail(ErrorCode::kInvalidArgument, "experiment_ids: expected strings");
      request.experiment_ids.push_back(id.get<std::string>());
    }
    if (auto f = body.find("filter"); f != body.end() && !f->is_null()) {
      if (!f->is_string()) fail(ErrorCode::kInvalidArgument, "filter: expected string");
      request.filter = f->get<std::string>();
    }
    if (auto o = body.find("order_by"); o != body.end() && !o->is_null()) {
      if (!o->is_array()) fail(ErrorCode::kInvalidArgument, "order_by: expected array");
      for (const auto& e : *o) {
        if (!e.is_string()) fail(ErrorCode::kInvalidArgument, "order_by: expected strings");
        request.order_by.push_back(e.get<std::string>());
      }
    }
    if (auto m = body.find("max_results"); m != body.end() && !m->is_null()) {
      if (!m->is_number_integer() || m->get<std::int64_t>() < 1 ||
          m->get<std::int64_t>() > static_cast<std::int64_t>(storage::kMaxResultsCap)) {
        fail(ErrorCode::kInvalidArgument, "max_results must be between 1 and 1000");
      }
      request.max_results = m->get<std::size_t>();
    }
    if (auto t = body.find("page_token"); t != body.end() && !t->is_null()) {
      if (!t->is_string()) fail(ErrorCode::kInvalidArgument, "page_token: expected string");
      request.page_token = t->get<std::string>();
    }

    auto page = query::search_runs(store, request);
    Json out{{"runs", page.items}};
    if (page.next_page_token) out["next_page_token"] = *page.next_page_token;
    return json_reply(200, out);
  }
};

TrackingServer::TrackingServer(storage::Store& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

TrackingServer::~TrackingServer() {
  if (impl_->http.is_running()) impl_->http.stop();
}

bool TrackingServer::listen(const std::string& host, int port) {
  return impl_->http.listen(host, port);
}

int TrackingServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool TrackingServer::listen_after_bind() { return impl_->http.listen_after_bind(); }

void TrackingServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

bool TrackingServer::is_running() const { return impl_->http.is_running(); }

void TrackingServer::stop() { impl_->http.stop(); }

}  // namespace qtrack::server
