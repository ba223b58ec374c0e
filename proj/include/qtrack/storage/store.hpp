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

// Single-node persistence for experiments, runs, metric histories and
// content-addressed artifacts under one root directory:
//
//   VERSION                                   layout version, "1\n"
//   LOCK                                      flock()ed by the owning process
//   meta/experiments.jsonl                    append-only experiment snapshots
//   runs/<exp_id>/<run_id>/run.json           run header, atomically replaced
//   runs/<exp_id>/<run_id>/metrics/<key>.jsonl  one MetricPoint per line
//   artifacts/by-sha/<sha[0:2]>/<sha>         blob bytes
//   artifacts/index/<run_id>.jsonl            one ArtifactRef per line
//
// Metric file names are the percent-encoded metric key. Everything is UTF-8
// JSON with '\n' terminators.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtrack/core/types.hpp"
#include "qtrack/storage/pagination.hpp"

namespace qtrack::storage {

inline constexpr int kLayoutVersion = 1;

struct WriteOptions {
  // Reject the write with kInvalidState unless the run is RUNNING.
  bool require_running = false;
};

// Percent-encoding used for metric file names; bytes outside
// [A-Za-z0-9._~-] become %XX.
std::string encode_key_filename(std::string_view key);
std::string decode_key_filename(std::string_view name);

// Relative artifact path: `/`-separated, no empty, "." or ".." segments,
// no leading slash, no backslash or control characters, valid UTF-8.
bool is_valid_artifact_path(std::string_view path);

class Store {
 public:
  // Opens (or with `create_if_missing`, initializes) the store at `root` and
  // takes the single-owner lock. Errors: kNotFound when the root or its
  // VERSION file is absent and creation was not requested,
  // kVersionMismatch, kLocked when another owner holds the root, kIo.
  static Store open(const std::filesystem::path& root, bool create_if_missing);

  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;
  ~Store();

  const std::filesystem::path& root() const;
  int layout_version() const;

  // --- experiments ---------------------------------------------------------
  Experiment create_experiment(const std::string& name, const StringMap& tags,
                               std::int64_t creation_time);
  // Stores an experiment verbatim (used by import). Conflicts when the id or
  // the active name is already taken by a different record.
  void put_experiment(const Experiment& experiment);
  Experiment get_experiment(const std::string& experiment_id) const;
  std::optional<Experiment> find_experiment_by_name(const std::string& name) const;
  // Ordered by (creation_time, experiment_id).
  std::vector<Experiment> list_experiments(bool include_deleted = false) const;
  Experiment set_experiment_lifecycle(const std::string& experiment_id,
                                      Lifecycle lifecycle);

  // --- runs ----------------------------------------------------------------
  // Writes a complete run: header, every metric history, and the artifact
  // index. Artifact blobs must already be stored.
  void put_run(const Run& run);
  Run get_run(const std::string& run_id) const;
  bool has_run(const std::string& run_id) const;

  // Applies `mutate` to the stored header under the per-run lock and writes
  // the result atomically. `mutate` sees a Run without metrics or artifacts
  // and may throw to abort with nothing written; changes to the id fields,
  // metrics or artifacts are rejected. Returns the full updated run.
  Run update_run(const std::string& run_id,
                 const std::function<void(Run&)>& mutate);

  // All runs of one experiment in storage order (unsorted).
  std::vector<Run> load_runs(const std::string& experiment_id) const;

  // Ordered by start_time desc, run_id asc.
  RunPage list_runs(const std::string& experiment_id, std::size_t max_results,
                    const std::optional<std::string>& page_token) const;

  // --- metrics -------------------------------------------------------------
  void append_metric(const std::string& run_id, const MetricPoint& point,
                     WriteOptions options = {});
  // All-or-nothing on validation: one bad point rejects the whole batch.
  void append_metrics(const std::string& run_id,
                      std::span<const MetricPoint> points,
                      WriteOptions options = {});
  std::vector<MetricPoint> metric_history(const std::string& run_id,
                                          const std::string& key) const;

  // --- artifacts -----------------------------------------------------------
  ArtifactRef put_artifact(const std::string& run_id, const std::string& path,
                           std::string_view bytes, const std::string& media_type,
                           WriteOptions options = {});
  std::pair<std::string, ArtifactRef> get_artifact(const std::string& run_id,
                                                   const std::string& path) const;
  // Sorted by path.
  std::vector<ArtifactRef> list_artifacts(const std::string& run_id) const;
  std::optional<std::string> read_blob(const std::string& sha256) const;
  std::size_t blob_count() const;

 private:
  struct Impl;
  explicit Store(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace qtrack::storage
