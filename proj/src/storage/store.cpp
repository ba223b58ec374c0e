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

#include "qtrack/storage/store.hpp"

#include <fcntl.h>
#include <sys/file.h>

#include <algorithm>
#include <cerrno>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>

#include "file_io.hpp"
#include "qtrack/core/digest.hpp"
#include "qtrack/core/hashing.hpp"
#include "qtrack/core/ids.hpp"
#include "qtrack/core/serialization.hpp"
#include "qtrack/core/validation.hpp"
#include "qtrack/error.hpp"

namespace fs = std::filesystem;

namespace qtrack::storage {
namespace {

constexpr std::string_view kDefaultMediaType = "application/octet-stream";

void require_valid(const ValidationResult& result) {
  if (!result.ok()) fail(ErrorCode::kInvalidArgument, result.summary());
}

std::string header_line(const Run& run) {
  Json j = run;
  j.erase("metrics");
  j.erase("artifacts");
  return dump_canonical(j) + "\n";
}

std::string to_lines(std::span<const MetricPoint> points) {
  std::string out;
  for (const auto& p : points) out += encode(p) + "\n";
  return out;
}

bool is_unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
}

void check_run_invariants(const Run& run) {
  if (run.end_time) {
    if (run.status == RunStatus::kRunning) {
      fail(ErrorCode::kInvalidArgument, "end_time must be absent while RUNNING");
    }
    if (*run.end_time < run.start_time) {
      fail(ErrorCode::kInvalidArgument, "end_time precedes start_time");
    }
  }
  for (const auto& [key, value] : run.params) {
    require_valid(validate_key("params", key));
    (void)value;
  }
  for (const auto& [key, value] : run.tags) {
    require_valid(validate_key("tags", key));
    (void)value;
  }
  require_valid(validate_provenance(run.provenance));
}

}  // namespace

std::string encode_key_filename(std::string_view key) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : key) {
    if (is_unreserved(c)) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0f]);
    }
  }
  return out;
}

std::string decode_key_filename(std::string_view name) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '%' && i + 2 < name.size()) {
      int hi = hex(name[i + 1]);
      int lo = hex(name[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(name[i]);
  }
  return out;
}

bool is_valid_artifact_path(std::string_view path) {
  if (path.empty() || path.size() > 1024 || path.front() == '/') return false;
  for (unsigned char c : path) {
    if (c < 0x20 || c == 0x7f || c == '\\') return false;
  }
  std::size_t pos = 0;
  while (pos <= path.size()) {
    auto end = path.find('/', pos);
    if (end == std::string_view::npos) end = path.size();
    auto segment = path.substr(pos, end - pos);
    if (segment.empty() || segment == "." || segment == "..") return false;
    pos = end + 1;
  }
  return is_valid_utf8(path);
}

// --- Impl -------------------------------------------------------------------

struct Store::Impl {
  fs::path root;
  int version = kLayoutVersion;
  io::UniqueFd lock_fd;

  // Experiments and the run_id → experiment_id index.
  mutable std::shared_mutex meta_mu;
  std::map<std::string, Experiment> experiments;
  std::map<std::string, std::string> run_experiment;

  mutable std::mutex run_locks_mu;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> run_locks;

  fs::path experiments_file() const { return root / "meta" / "experiments.jsonl"; }
  fs::path run_dir(const std::string& exp_id, const std::string& run_id) const {
    return root / "runs" / exp_id / run_id;
  }
  fs::path blob_path(const std::string& sha) const {
    return root / "artifacts" / "by-sha" / sha.substr(0, 2) / sha;
  }
  fs::path index_file(const std::string& run_id) const {
    return root / "artifacts" / "index" / (run_id + ".jsonl");
  }

  std::mutex& run_lock(const std::string& run_id) const {
    std::lock_guard guard(run_locks_mu);
    auto& slot = run_locks[run_id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
  }

  std::string experiment_of(const std::string& run_id) const {
    std::shared_lock guard(meta_mu);
    auto it = run_experiment.find(run_id);
    if (it == run_experiment.end()) {
      fail(ErrorCode::kNotFound, "run " + run_id + " not found");
    }
    return it->second;
  }

  Run read_header(const std::string& run_id) const {
    auto dir = run_dir(experiment_of(run_id), run_id);
    auto text = io::read_file(dir / "run.json");
    if (!text) fail(ErrorCode::kNotFound, "run " + run_id + " not found");
    return decode<Run>(*text);
  }

  std::vector<MetricPoint> read_history(const fs::path& file) const {
    std::vector<MetricPoint> out;
    auto text = io::read_file(file);
    if (!text) return out;
    for (auto line : io::complete_lines(*text)) out.push_back(decode<MetricPoint>(line));
    return out;
  }

  std::vector<ArtifactRef> read_index(const std::string& run_id) const {
    std::map<std::string, ArtifactRef> by_path;
    if (auto text = io::read_file(index_file(run_id))) {
      for (auto line : io::complete_lines(*text)) {
        auto ref = decode<ArtifactRef>(line);
        by_path.insert_or_assign(ref.path, std::move(ref));
      }
    }
    std::vector<ArtifactRef> out;
    out.reserve(by_path.size());
    for (auto& [path, ref] : by_path) out.push_back(std::move(ref));
    return out;
  }

  Run read_run(const std::string& run_id) const {
    auto exp_id = experiment_of(run_id);
    auto dir = run_dir(exp_id, run_id);
    auto text = io::read_file(dir / "run.json");
    if (!text) fail(ErrorCode::kNotFound, "run " + run_id + " not found");
    Run run = decode<Run>(*text);

    std::error_code ec;
    for (fs::directory_iterator it(dir / "metrics", ec), end; !ec && it != end;
         it.increment(ec)) {
      const auto& file = it->path();
      auto name = file.filename().string();
      if (io::is_temp_file(file) || !name.ends_with(".jsonl")) continue;
      auto key = decode_key_filename(name.substr(0, name.size() - 6));
      auto history = read_history(file);
      if (!history.empty()) run.metrics.emplace(std::move(key), std::move(history));
    }
    run.artifacts = read_index(run_id);
    return run;
  }

  void append_experiment_record(const Experiment& experiment) {
    io::append_file(experiments_file(), encode(experiment) + "\n");
  }

  // Removes temp files left by interrupted atomic writes and truncates torn
  // jsonl tails so later appends start on a fresh line.
  void recover() {
    std::vector<fs::path> temps;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      const auto& path = entry.path();
      if (io::is_temp_file(path)) {
        temps.push_back(path);
      } else if (path.filename().string().ends_with(".jsonl")) {
        io::repair_jsonl_tail(path);
      }
    }
    for (const auto& path : temps) fs::remove(path);
  }

  void load() {
    if (auto text = io::read_file(experiments_file())) {
      for (auto line : io::complete_lines(*text)) {
        auto experiment = decode<Experiment>(line);
        experiments.insert_or_assign(experiment.experiment_id, std::move(experiment));
      }
    }
    for (const auto& exp_entry : fs::directory_iterator(root / "runs")) {
      if (!exp_entry.is_directory()) continue;
      auto exp_id = exp_entry.path().filename().string();
      for (const auto& run_entry : fs::directory_iterator(exp_entry.path())) {
        if (!run_entry.is_directory()) continue;
        if (!fs::exists(run_entry.path() / "run.json")) continue;
        run_experiment.emplace(run_entry.path().filename().string(), exp_id);
      }
    }
  }

  void check_writable_status(const Run& header, const WriteOptions& options) const {
    if (options.require_running && header.status != RunStatus::kRunning) {
      fail(ErrorCode::kInvalidState, "run " + header.run_id + " is " +
                                         std::string(to_string(header.status)));
    }
  }
};

// --- lifecycle ----------------------------------------------------------------

Store::Store(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Store::Store(Store&&) noexcept = default;
Store& Store::operator=(Store&&) noexcept = default;
Store::~Store() = default;

Store Store::open(const fs::path& root, bool create_if_missing) {
  std::error_code ec;
  if (!fs::exists(root, ec)) {
    if (!create_if_missing) {
      fail(ErrorCode::kNotFound, "store root " + root.string() + " does not exist");
    }
    fs::create_directories(root, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create " + root.string() + ": " + ec.message());
  }
  if (!fs::is_directory(root, ec)) {
    fail(ErrorCode::kIo, root.string() + " is not a directory");
  }

  auto impl = std::make_unique<Impl>();
  impl->root = root;

  auto version_text = io::read_file(root / "VERSION");
  if (!version_text) {
    if (!create_if_missing) {
      fail(ErrorCode::kNotFound, root.string() + " is not a qtrack store (no VERSION)");
    }
  } else {
    std::string trimmed = *version_text;
    while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r' ||
                                trimmed.back() == ' ')) {
      trimmed.pop_back();
    }
    if (trimmed != std::to_string(kLayoutVersion)) {
      fail(ErrorCode::kVersionMismatch,
           "store layout version " + trimmed + " is not supported (expected " +
               std::to_string(kLayoutVersion) + ")");
    }
  }

  impl->lock_fd = io::UniqueFd(
      ::open((root / "LOCK").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644));
  if (!impl->lock_fd.valid()) {
    fail(ErrorCode::kIo, "cannot open lock file in " + root.string());
  }
  if (::flock(impl->lock_fd.get(), LOCK_EX | LOCK_NB) != 0) {
    if (errno == EWOULDBLOCK) {
      fail(ErrorCode::kLocked, "store " + root.string() + " is owned by another process");
    }
    fail(ErrorCode::kIo, "cannot lock " + root.string());
  }

  for (const auto* sub : {"meta", "runs", "artifacts/by-sha", "artifacts/index"}) {
    fs::create_directories(root / sub, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create " + (root / sub).string());
  }
  if (!version_text) {
    io::write_file_atomic(root / "VERSION", std::to_string(kLayoutVersion) + "\n");
  }
  if (!fs::exists(impl->experiments_file())) {
    io::append_file(impl->experiments_file(), "");
  }

  impl->recover();
  impl->load();
  return Store(std::move(impl));
}

const fs::path& Store::root() const { return impl_->root; }
int Store::layout_version() const { return impl_->version; }

// --- experiments --------------------------------------------------------------

Experiment Store::create_experiment(const std::string& name, const StringMap& tags,
                                    std::int64_t creation_time) {
  require_valid(validate_experiment_name(name));
  for (const auto& [key, value] : tags) require_valid(validate_key("tags", key));
  if (creation_time <= 0) {
    fail(ErrorCode::kInvalidArgument, "creation_time must be positive");
  }

  std::unique_lock guard(impl_->meta_mu);
  for (const auto& [id, existing] : impl_->experiments) {
    if (existing.lifecycle == Lifecycle::kActive && existing.name == name) {
      fail(ErrorCode::kConflict, "experiment named \"" + name + "\" already exists");
    }
  }
  Experiment experiment{new_id(), name, creation_time, Lifecycle::kActive, tags};
  impl_->append_experiment_record(experiment);
  impl_->experiments.emplace(experiment.experiment_id, experiment);
  return experiment;
}

void Store::put_experiment(const Experiment& experiment) {
  if (!is_valid_id(experiment.experiment_id)) {
    fail(ErrorCode::kInvalidArgument, "malformed experiment_id");
  }
  require_valid(validate_experiment_name(experiment.name));
  if (experiment.creation_time <= 0) {
    fail(ErrorCode::kInvalidArgument, "creation_time must be positive");
  }

  std::unique_lock guard(impl_->meta_mu);
  if (auto it = impl_->experiments.find(experiment.experiment_id);
      it != impl_->experiments.end()) {
    if (it->second == experiment) return;
    fail(ErrorCode::kConflict,
         "experiment " + experiment.experiment_id + " already exists");
  }
  if (experiment.lifecycle == Lifecycle::kActive) {
    for (const auto& [id, existing] : impl_->experiments) {
      if (existing.lifecycle == Lifecycle::kActive && existing.name == experiment.name) {
        fail(ErrorCode::kConflict,
             "experiment named \"" + experiment.name + "\" already exists");
      }
    }
  }
  impl_->append_experiment_record(experiment);
  impl_->experiments.emplace(experiment.experiment_id, experiment);
}

Experiment Store::get_experiment(const std::string& experiment_id) const {
  std::shared_lock guard(impl_->meta_mu);
  auto it = impl_->experiments.find(experiment_id);
  if (it == impl_->experiments.end()) {
    fail(ErrorCode::kNotFound, "experiment " + experiment_id + " not found");
  }
  return it->second;
}

std::optional<Experiment> Store::find_experiment_by_name(const std::string& name) const {
  std::shared_lock guard(impl_->meta_mu);
  for (const auto& [id, experiment] : impl_->experiments) {
    if (experiment.lifecycle == Lifecycle::kActive && experiment.name == name) {
      return experiment;
    }
  }
  return std::nullopt;
}

std::vector<Experiment> Store::list_experiments(bool include_deleted) const {
  std::vector<Experiment> out;
  {
    std::shared_lock guard(impl_->meta_mu);
    for (const auto& [id, experiment] : impl_->experiments) {
      if (include_deleted || experiment.lifecycle == Lifecycle::kActive) {
        out.push_back(experiment);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Experiment& a, const Experiment& b) {
    return std::tie(a.creation_time, a.experiment_id) <
           std::tie(b.creation_time, b.experiment_id);
  });
  return out;
}

Experiment Store::set_experiment_lifecycle(const std::string& experiment_id,
                                           Lifecycle lifecycle) {
  std::unique_lock guard(impl_->meta_mu);
  auto it = impl_->experiments.find(experiment_id);
  if (it == impl_->experiments.end()) {
    fail(ErrorCode::kNotFound, "experiment " + experiment_id + " not found");
  }
  if (it->second.lifecycle == lifecycle) return it->second;
  if (lifecycle == Lifecycle::kActive) {
    for (const auto& [id, other] : impl_->experiments) {
      if (id != experiment_id && other.lifecycle == Lifecycle::kActive &&
          other.name == it->second.name) {
        fail(ErrorCode::kConflict,
             "experiment named \"" + other.name + "\" already exists");
      }
    }
  }
  Experiment updated = it->second;
  updated.lifecycle = lifecycle;
  impl_->append_experiment_record(updated);
  it->second = updated;
  return updated;
}

// --- runs -----------------------------------------------------------------------

void Store::put_run(const Run& run) {
  if (!is_valid_id(run.run_id)) fail(ErrorCode::kInvalidArgument, "malformed run_id");
  (void)get_experiment(run.experiment_id);
  check_run_invariants(run);

  for (const auto& [key, history] : run.metrics) {
    for (const auto& point : history) {
      require_valid(validate_metric_point(point));
      if (point.key != key) {
        fail(ErrorCode::kInvalidArgument,
             "metric point key " + point.key + " filed under " + key);
      }
    }
  }
  std::set<std::string> paths;
  for (const auto& ref : run.artifacts) {
    if (ref.run_id != run.run_id || !is_valid_artifact_path(ref.path) ||
        !is_lower_hex(ref.sha256, 64)) {
      fail(ErrorCode::kInvalidArgument, "malformed artifact reference " + ref.path);
    }
    if (!paths.insert(ref.path).second) {
      fail(ErrorCode::kInvalidArgument, "duplicate artifact path " + ref.path);
    }
    std::error_code ec;
    auto size = fs::file_size(impl_->blob_path(ref.sha256), ec);
    if (ec) fail(ErrorCode::kNotFound, "blob " + ref.sha256 + " not stored");
    if (size != ref.size_bytes) {
      fail(ErrorCode::kInvalidArgument, "artifact size mismatch for " + ref.path);
    }
  }

  std::lock_guard run_guard(impl_->run_lock(run.run_id));
  {
    std::shared_lock guard(impl_->meta_mu);
    auto it = impl_->run_experiment.find(run.run_id);
    if (it != impl_->run_experiment.end() && it->second != run.experiment_id) {
      fail(ErrorCode::kConflict,
           "run " + run.run_id + " belongs to experiment " + it->second);
    }
  }

  const auto dir = impl_->run_dir(run.experiment_id, run.run_id);
  fs::create_directories(dir / "metrics");

  std::set<std::string> wanted;
  for (const auto& [key, history] : run.metrics) {
    if (history.empty()) continue;
    auto name = encode_key_filename(key) + ".jsonl";
    wanted.insert(name);
    io::write_file_atomic(dir / "metrics" / name, to_lines(history));
  }
  for (const auto& entry : fs::directory_iterator(dir / "metrics")) {
    if (!wanted.count(entry.path().filename().string())) fs::remove(entry.path());
  }

  auto refs = run.artifacts;
  std::sort(refs.begin(), refs.end(),
            [](const ArtifactRef& a, const ArtifactRef& b) { return a.path < b.path; });
  std::string index;
  for (const auto& ref : refs) index += encode(ref) + "\n";
  io::write_file_atomic(impl_->index_file(run.run_id), index);

  io::write_file_atomic(dir / "run.json", header_line(run));

  std::unique_lock guard(impl_->meta_mu);
  impl_->run_experiment.insert_or_assign(run.run_id, run.experiment_id);
}

Run Store::get_run(const std::string& run_id) const { return impl_->read_run(run_id); }

bool Store::has_run(const std::string& run_id) const {
  std::shared_lock guard(impl_->meta_mu);
  return impl_->run_experiment.count(run_id) > 0;
}

Run Store::update_run(const std::string& run_id,
                      const std::function<void(Run&)>& mutate) {
  std::lock_guard run_guard(impl_->run_lock(run_id));
  const Run before = impl_->read_header(run_id);
  Run after = before;
  mutate(after);
  if (after.run_id != before.run_id || after.experiment_id != before.experiment_id) {
    fail(ErrorCode::kInvalidArgument, "run identity cannot change");
  }
  if (!after.metrics.empty() || !after.artifacts.empty()) {
    fail(ErrorCode::kInvalidArgument,
         "metrics and artifacts are written through their own operations");
  }
  check_run_invariants(after);
  if (after != before) {
    io::write_file_atomic(impl_->run_dir(after.experiment_id, run_id) / "run.json",
                          header_line(after));
  }
  return impl_->read_run(run_id);
}

std::vector<Run> Store::load_runs(const std::string& experiment_id) const {
  std::vector<std::string> ids;
  {
    std::shared_lock guard(impl_->meta_mu);
    if (!impl_->experiments.count(experiment_id)) {
      fail(ErrorCode::kNotFound, "experiment " + experiment_id + " not found");
    }
    for (const auto& [run_id, exp_id] : impl_->run_experiment) {
      if (exp_id == experiment_id) ids.push_back(run_id);
    }
  }
  std::vector<Run> runs;
  runs.reserve(ids.size());
  for (const auto& id : ids) runs.push_back(impl_->read_run(id));
  return runs;
}

RunPage Store::list_runs(const std::string& experiment_id, std::size_t max_results,
                         const std::optional<std::string>& page_token) const {
  auto runs = load_runs(experiment_id);
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) {
    if (a.start_time != b.start_time) return a.start_time > b.start_time;
    return a.run_id < b.run_id;
  });
  return paginate(std::move(runs), max_results, page_token, "list|" + experiment_id);
}

// --- metrics -------------------------------------------------------------------

void Store::append_metric(const std::string& run_id, const MetricPoint& point,
                          WriteOptions options) {
  append_metrics(run_id, std::span<const MetricPoint>(&point, 1), options);
}

void Store::append_metrics(const std::string& run_id,
                           std::span<const MetricPoint> points,
                           WriteOptions options) {
  for (const auto& point : points) require_valid(validate_metric_point(point));

  std::lock_guard run_guard(impl_->run_lock(run_id));
  const Run header = impl_->read_header(run_id);
  if (header.status != RunStatus::kRunning && header.status != RunStatus::kFinished) {
    fail(ErrorCode::kInvalidState, "run " + run_id + " is " +
                                       std::string(to_string(header.status)));
  }
  impl_->check_writable_status(header, options);
  if (points.empty()) return;

  std::map<std::string, std::string> by_key;
  for (const auto& point : points) by_key[point.key] += encode(point) + "\n";
  const auto dir = impl_->run_dir(header.experiment_id, run_id) / "metrics";
  fs::create_directories(dir);
  for (const auto& [key, lines] : by_key) {
    io::append_file(dir / (encode_key_filename(key) + ".jsonl"), lines);
  }
}

std::vector<MetricPoint> Store::metric_history(const std::string& run_id,
                                               const std::string& key) const {
  auto dir = impl_->run_dir(impl_->experiment_of(run_id), run_id);
  return impl_->read_history(dir / "metrics" / (encode_key_filename(key) + ".jsonl"));
}

// --- artifacts ------------------------------------------------------------------

ArtifactRef Store::put_artifact(const std::string& run_id, const std::string& path,
                                std::string_view bytes, const std::string& media_type,
                                WriteOptions options) {
  if (!is_valid_artifact_path(path)) {
    fail(ErrorCode::kInvalidArgument, "invalid artifact path \"" + path + "\"");
  }
  ArtifactRef ref;
  ref.run_id = run_id;
  ref.path = path;
  ref.sha256 = sha256_hex(bytes);
  ref.size_bytes = bytes.size();
  ref.media_type = media_type.empty() ? std::string(kDefaultMediaType) : media_type;

  std::lock_guard run_guard(impl_->run_lock(run_id));
  const Run header = impl_->read_header(run_id);
  impl_->check_writable_status(header, options);

  for (const auto& existing : impl_->read_index(run_id)) {
    if (existing.path != path) continue;
    if (existing.sha256 == ref.sha256) return existing;
    fail(ErrorCode::kConflict,
         "artifact " + path + " already stored with different content");
  }

  const auto blob = impl_->blob_path(ref.sha256);
  if (!fs::exists(blob)) {
    fs::create_directories(blob.parent_path());
    io::write_file_atomic(blob, bytes);
  }
  io::append_file(impl_->index_file(run_id), encode(ref) + "\n");
  return ref;
}

std::pair<std::string, ArtifactRef> Store::get_artifact(const std::string& run_id,
                                                        const std::string& path) const {
  (void)impl_->experiment_of(run_id);
  for (auto& ref : impl_->read_index(run_id)) {
    if (ref.path != path) continue;
    auto bytes = read_blob(ref.sha256);
    if (!bytes) fail(ErrorCode::kIo, "blob " + ref.sha256 + " is missing");
    if (sha256_hex(*bytes) != ref.sha256) {
      fail(ErrorCode::kIo, "blob " + ref.sha256 + " is corrupt");
    }
    return {std::move(*bytes), std::move(ref)};
  }
  fail(ErrorCode::kNotFound, "artifact " + path + " not found in run " + run_id);
}

std::vector<ArtifactRef> Store::list_artifacts(const std::string& run_id) const {
  (void)impl_->experiment_of(run_id);
  return impl_->read_index(run_id);
}

std::optional<std::string> Store::read_blob(const std::string& sha256) const {
  if (!is_lower_hex(sha256, 64)) return std::nullopt;
  return io::read_file(impl_->blob_path(sha256));
}

std::size_t Store::blob_count() const {
  std::size_t count = 0;
  for (const auto& entry :
       fs::recursive_directory_iterator(impl_->root / "artifacts" / "by-sha")) {
    if (entry.is_regular_file() && !io::is_temp_file(entry.path())) ++count;
  }
  return count;
}

}  // namespace qtrack::storage
