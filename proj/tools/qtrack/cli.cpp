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

#include "cli.hpp"

#include <CLI11.hpp>
#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "qtrack/client/tracking_client.hpp"
#include "qtrack/core/calibration.hpp"
#include "qtrack/core/hashing.hpp"
#include "qtrack/core/ids.hpp"
#include "qtrack/core/serialization.hpp"
#include "qtrack/server/tracking_server.hpp"
#include "qtrack/storage/store.hpp"

namespace qtrack::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kBundleFormat = "qtrack-export";
constexpr int kBundleVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::string> env(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  return OutputFormat::kTable;
}

void write_line(std::ostream& out, const Json& j) { out << dump_canonical(j) << '\n'; }

// Aligned columns separated by two spaces.
void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      line += cells[i];
      if (i + 1 < cells.size()) line += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << line << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_field(cells[i]);
    }
    out << "\r\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

void write_rows(std::ostream& out, OutputFormat format, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  if (format == OutputFormat::kCsv) {
    write_csv(out, header, rows);
  } else {
    write_table(out, header, rows);
  }
}

std::string join_map(const StringMap& map) {
  std::string out;
  for (const auto& [k, v] : map) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& values, const char* sep = ",") {
  std::string out;
  for (auto v : values) {
    if (!out.empty()) out += sep;
    out += std::to_string(v);
  }
  return out;
}

// --- shared plumbing --------------------------------------------------------

struct Globals {
  std::string uri = std::string(client::kDefaultTrackingUri);
  std::string format = "table";
};

client::TrackingClient connect(const Globals& globals) {
  return client::TrackingClient(globals.uri, env("QTRACK_AUTH_TOKEN"));
}

// Accepts an experiment name, or an experiment id when no name matches.
Experiment resolve_experiment(client::TrackingClient& api, const std::string& ref) {
  if (auto found = api.find_experiment(ref)) return *found;
  if (is_valid_id(ref)) return api.get_experiment(ref);
  fail(ErrorCode::kNotFound, "experiment \"" + ref + "\" not found");
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kNotFound, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- serve ------------------------------------------------------------------

struct ServeArgs {
  std::string addr = std::string(server::kDefaultAddress);
  std::string store;
  bool create = false;
  std::string ui_dir;
};

int cmd_serve(const ServeArgs& args, std::ostream& err) {
  if (args.store.empty()) throw UsageError("--store or QTRACK_STORE_DIR is required");
  auto [host, port] = server::parse_address(args.addr);

  std::optional<storage::Store> store;
  try {
    store.emplace(storage::Store::open(args.store, args.create));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotFound) {
      throw UsageError(std::string(e.what()) + " (pass --create to initialize)");
    }
    throw;
  }

  // Signals are taken synchronously by one waiter thread; every other thread
  // inherits the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  server::ServerOptions options;
  options.auth_token = env("QTRACK_AUTH_TOKEN");
  if (!args.ui_dir.empty()) options.ui_dir = args.ui_dir;
  server::TrackingServer http(*store, options);

  const int bound = http.bind(host, port);
  if (bound < 0) fail(ErrorCode::kIo, "cannot bind " + args.addr);
  err << "qtrack: serving " << args.store << " on http://" << host << ":" << bound << std::endl;

  std::atomic<bool> signalled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    signalled = true;
    http.stop();
  });
  const bool ok = http.listen_after_bind();
  if (!signalled) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  if (!ok && !signalled) fail(ErrorCode::kIo, "server stopped unexpectedly");
  err << "qtrack: stopped" << std::endl;
  return kExitOk;
}

// --- experiments --------------------------------------------------------------

void write_experiments(std::ostream& out, const std::vector<Experiment>& experiments,
                       OutputFormat format) {
  if (format == OutputFormat::kJson) {
    write_line(out, Json(experiments));
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : experiments) {
    rows.push_back({e.experiment_id, e.name, std::string(to_string(e.lifecycle)),
                    std::to_string(e.creation_time), join_map(e.tags)});
  }
  write_rows(out, format, {"experiment_id", "name", "lifecycle", "creation_time", "tags"}, rows);
}

// --- runs -----------------------------------------------------------------------

struct SearchArgs {
  std::vector<std::string> experiments;
  std::string filter;
  std::vector<std::string> order_by;
  std::optional<std::size_t> max_results;
  std::string page_token;
};

void report_parse_error(std::ostream& err, const client::ApiFailure& e, const std::string& filter) {
  err << "qtrack: " << e.what() << '\n';
  const auto& details = e.api_error().details;
  if (details.is_object() && details.contains("offset") && details["offset"].is_number()) {
    auto offset = details["offset"].get<std::size_t>();
    err << "  " << filter << '\n' << "  " << std::string(offset, ' ') << "^\n";
  }
}

int cmd_runs_search(const Globals& globals, const SearchArgs& args, OutputFormat format,
                    std::ostream& out, std::ostream& err) {
  auto api = connect(globals);
  client::SearchQuery query;
  for (const auto& ref : args.experiments) {
    query.experiment_ids.push_back(resolve_experiment(api, ref).experiment_id);
  }
  query.filter = args.filter;
  query.order_by = args.order_by;

  std::vector<Run> runs;
  try {
    if (args.max_results || !args.page_token.empty()) {
      query.max_results = args.max_results;
      if (!args.page_token.empty()) query.page_token = args.page_token;
      auto page = api.search_runs(query);
      runs = std::move(page.items);
      if (page.next_page_token) err << "next page token: " << *page.next_page_token << '\n';
    } else {
      runs = api.search_all(query);
    }
  } catch (const client::ApiFailure& e) {
    if (e.api_error().details.is_object() && e.api_error().details.contains("offset")) {
      report_parse_error(err, e, args.filter);
      return kExitDomain;
    }
    throw;
  }
  write_runs(out, runs, format);
  return kExitOk;
}

void show_run(std::ostream& out, const Run& run) {
  out << "run_id         " << run.run_id << '\n'
      << "experiment_id  " << run.experiment_id << '\n'
      << "status         " << to_string(run.status) << '\n'
      << "start_time     " << run.start_time << '\n'
      << "end_time       " << (run.end_time ? std::to_string(*run.end_time) : "-") << '\n';

  out << "\nparams\n";
  for (const auto& [k, v] : run.params) out << "  " << k << " = " << v << '\n';
  out << "\ntags\n";
  for (const auto& [k, v] : run.tags) out << "  " << k << " = " << v << '\n';
  out << "\nmetrics\n";
  for (const auto& [k, history] : run.metrics) {
    if (auto latest = latest_point(history)) {
      out << "  " << k << " = " << format_number(latest->value) << "  (step " << latest->step
          << ", " << history.size() << " points)\n";
    }
  }
  out << "\nartifacts\n";
  for (const auto& a : run.artifacts) {
    out << "  " << a.path << "  " << a.size_bytes << " bytes  " << a.media_type << "  "
        << a.sha256 << '\n';
  }

  const auto& p = run.provenance;
  out << "\nprovenance\n";
  if (p.empty()) out << "  (none)\n";
  if (p.circuit) {
    out << "  circuit      " << p.circuit->name << ", " << p.circuit->qubit_count
        << " qubits, depth " << p.circuit->depth << ", " << to_string(p.circuit->format)
        << ", digest " << p.circuit->digest << '\n';
  }
  if (p.compilation) {
    out << "  compilation  " << p.compilation->compiler_name << " "
        << p.compilation->compiler_version << ", optimization level "
        << p.compilation->optimization_level << ", " << p.compilation->qubit_mapping.size()
        << " mapped qubits\n";
  }
  if (p.calibration) {
    out << "  calibration  " << p.calibration->calibration_set_id << ", "
        << p.calibration->device_name << ", " << p.calibration->qubit_count << " qubits, "
        << p.calibration->gates.size() << " gates, timestamp " << p.calibration->timestamp
        << '\n';
  }
  if (p.execution) {
    out << "  execution    " << p.execution->backend_name << ", " << p.execution->shots
        << " shots";
    if (p.execution->calibration_set_id) {
      out << ", calibration " << *p.execution->calibration_set_id;
    }
    out << '\n';
    for (const auto& [bits, count] : p.execution->counts) {
      out << "    " << bits << "  " << count << '\n';
    }
  }
}

// --- calib --------------------------------------------------------------------

CalibrationSet calibration_of(const Run& run) {
  if (!run.provenance.calibration) {
    fail(ErrorCode::kInvalidState, "run " + run.run_id + " has no calibration record");
  }
  return *run.provenance.calibration;
}

void show_diff(std::ostream& out, const CalibrationDiff& diff, OutputFormat format) {
  if (format == OutputFormat::kTable) {
    out << "base   " << diff.base_id << '\n' << "other  " << diff.other_id << '\n';
    if (diff.base_id == diff.other_id) out << "note: identical calibration set\n";
    out << '\n';
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& d : diff.qubit_deltas) {
    rows.push_back({"qubit", std::to_string(d.qubit_index), format_number(d.d_t1_us),
                    format_number(d.d_t2_us), format_number(d.d_readout_fidelity)});
  }
  for (const auto& g : diff.gate_deltas) {
    rows.push_back({"gate", g.gate_name + "(" + join_ints(g.qubit_indices) + ")", "", "",
                    format_number(g.d_fidelity)});
  }
  for (auto q : diff.added_qubits) rows.push_back({"added", std::to_string(q), "", "", ""});
  for (auto q : diff.removed_qubits) rows.push_back({"removed", std::to_string(q), "", "", ""});
  write_rows(out, format, {"kind", "target", "d_t1_us", "d_t2_us", "d_fidelity"}, rows);
}

// --- export / import -----------------------------------------------------------

struct ExportArgs {
  std::string experiment;
  std::string out_dir;
  bool force = false;
};

int cmd_export(const Globals& globals, const ExportArgs& args, std::ostream& out) {
  const fs::path root = args.out_dir;
  if (fs::exists(root)) {
    if (!fs::is_directory(root)) throw UsageError(args.out_dir + " is not a directory");
    if (!fs::is_empty(root)) {
      if (!args.force) throw UsageError(args.out_dir + " is not empty (use --force)");
      fs::remove(root / "manifest.json");
      fs::remove_all(root / "runs");
      fs::remove_all(root / "blobs");
    }
  }
  fs::create_directories(root / "runs");
  fs::create_directories(root / "blobs");

  auto api = connect(globals);
  const auto experiment = resolve_experiment(api, args.experiment);
  client::SearchQuery query;
  query.experiment_ids = {experiment.experiment_id};
  const auto runs = api.search_all(query);

  std::set<std::string> blobs;
  Json run_ids = Json::array();
  for (const auto& run : runs) {
    for (const auto& ref : run.artifacts) {
      if (blobs.contains(ref.sha256)) continue;
      auto bytes = api.get_artifact(run.run_id, ref.path);
      if (sha256_hex(bytes) != ref.sha256) {
        fail(ErrorCode::kIo, "artifact " + ref.path + " of run " + run.run_id +
                                 " does not match its digest");
      }
      write_file(root / "blobs" / ref.sha256, bytes);
      blobs.insert(ref.sha256);
    }
    write_file(root / "runs" / (run.run_id + ".json"), dump_canonical(Json(run)) + "\n");
    run_ids.push_back(run.run_id);
  }

  Json manifest{{"format", kBundleFormat},
                {"version", kBundleVersion},
                {"experiment", experiment},
                {"run_ids", run_ids},
                {"run_count", runs.size()},
                {"blob_count", blobs.size()}};
  write_file(root / "manifest.json", dump_canonical(manifest) + "\n");
  out << "exported " << runs.size() << " runs of \"" << experiment.name << "\" to "
      << args.out_dir << '\n';
  return kExitOk;
}

struct ImportArgs {
  std::string in_dir;
  std::string store;
};

int cmd_import(const ImportArgs& args, std::ostream& out) {
  if (args.store.empty()) throw UsageError("--store or QTRACK_STORE_DIR is required");
  const fs::path root = args.in_dir;
  if (!fs::is_regular_file(root / "manifest.json")) {
    throw UsageError(args.in_dir + " has no manifest.json");
  }
  const auto manifest = parse_json(read_file(root / "manifest.json"));
  if (!manifest.is_object() || manifest.value("format", "") != kBundleFormat ||
      manifest.value("version", 0) != kBundleVersion) {
    fail(ErrorCode::kVersionMismatch, "unsupported bundle in " + args.in_dir);
  }
  const auto experiment = manifest.at("experiment").get<Experiment>();

  auto store = storage::Store::open(args.store, true);
  store.put_experiment(experiment);
  std::size_t count = 0;
  for (const auto& id : manifest.at("run_ids")) {
    auto run = decode<Run>(read_file(root / "runs" / (id.get<std::string>() + ".json")));
    if (run.experiment_id != experiment.experiment_id) {
      fail(ErrorCode::kInvalidArgument, "run " + run.run_id + " belongs to another experiment");
    }
    auto artifacts = std::move(run.artifacts);
    run.artifacts.clear();
    store.put_run(run);
    for (const auto& ref : artifacts) {
      auto bytes = read_file(root / "blobs" / ref.sha256);
      if (sha256_hex(bytes) != ref.sha256) {
        fail(ErrorCode::kIo, "blob " + ref.sha256 + " does not match its digest");
      }
      store.put_artifact(run.run_id, ref.path, bytes, ref.media_type);
    }
    ++count;
  }
  out << "imported " << count << " runs of \"" << experiment.name << "\" into " << args.store
      << '\n';
  return kExitOk;
}

}  // namespace

// --- public helpers -------------------------------------------------------------

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer, ptr);
}

std::vector<std::string> run_columns(const std::vector<Run>& runs) {
  std::vector<std::string> columns = {"run_id", "experiment_id", "status", "start_time",
                                      "end_time"};
  std::set<std::string> params, metrics, tags;
  for (const auto& run : runs) {
    for (const auto& [k, v] : run.params) params.insert("params." + k);
    for (const auto& [k, v] : run.metrics) {
      if (!v.empty()) metrics.insert("metrics." + k);
    }
    for (const auto& [k, v] : run.tags) tags.insert("tags." + k);
  }
  columns.insert(columns.end(), params.begin(), params.end());
  columns.insert(columns.end(), metrics.begin(), metrics.end());
  columns.insert(columns.end(), tags.begin(), tags.end());
  return columns;
}

std::vector<std::string> run_row(const Run& run, const std::vector<std::string>& columns) {
  std::vector<std::string> row;
  row.reserve(columns.size());
  auto lookup = [](const StringMap& map, std::string_view key) {
    auto it = map.find(std::string(key));
    return it == map.end() ? std::string() : it->second;
  };
  for (const auto& column : columns) {
    std::string_view c = column;
    if (c == "run_id") {
      row.push_back(run.run_id);
    } else if (c == "experiment_id") {
      row.push_back(run.experiment_id);
    } else if (c == "status") {
      row.push_back(std::string(to_string(run.status)));
    } else if (c == "start_time") {
      row.push_back(std::to_string(run.start_time));
    } else if (c == "end_time") {
      row.push_back(run.end_time ? std::to_string(*run.end_time) : "");
    } else if (c.starts_with("params.")) {
      row.push_back(lookup(run.params, c.substr(7)));
    } else if (c.starts_with("tags.")) {
      row.push_back(lookup(run.tags, c.substr(5)));
    } else if (c.starts_with("metrics.")) {
      auto it = run.metrics.find(std::string(c.substr(8)));
      const MetricPoint* latest = nullptr;
      if (it != run.metrics.end()) latest = latest_point(it->second);
      row.push_back(latest ? format_number(latest->value) : "");
    } else {
      row.emplace_back();
    }
  }
  return row;
}

void write_runs(std::ostream& out, const std::vector<Run>& runs, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    write_line(out, Json(runs));
    return;
  }
  const auto columns = run_columns(runs);
  std::vector<std::vector<std::string>> rows;
  for (const auto& run : runs) rows.push_back(run_row(run, columns));
  write_rows(out, format, columns, rows);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qtrack: experiment tracking server and client"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  if (auto uri = env("QTRACK_TRACKING_URI")) globals.uri = *uri;
  app.add_option("--uri", globals.uri, "Tracking server URI (env QTRACK_TRACKING_URI)");
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  ServeArgs serve_args;
  if (auto dir = env("QTRACK_STORE_DIR")) serve_args.store = *dir;
  auto* serve = app.add_subcommand("serve", "Run the tracking server");
  serve->add_option("--addr", serve_args.addr, "Listen address host:port");
  serve->add_option("--store", serve_args.store, "Store root (env QTRACK_STORE_DIR)");
  serve->add_flag("--create", serve_args.create, "Initialize the store if missing");
  serve->add_option("--ui-dir", serve_args.ui_dir, "Static dashboard assets");

  auto* experiments = app.add_subcommand("experiments", "Manage experiments");
  experiments->require_subcommand(1);
  auto* exp_list = experiments->add_subcommand("list", "List active experiments");
  std::string exp_name;
  auto* exp_create = experiments->add_subcommand("create", "Create an experiment");
  exp_create->add_option("name", exp_name)->required();

  auto* runs = app.add_subcommand("runs", "Search and inspect runs");
  runs->require_subcommand(1);
  SearchArgs search_args;
  std::size_t max_results = 0;
  auto* search = runs->add_subcommand("search", "Search runs");
  search->add_option("-e,--experiment", search_args.experiments, "Experiment name or id")
      ->required();
  search->add_option("-f,--filter", search_args.filter, "Filter expression");
  search->add_option("--order-by", search_args.order_by, "Order key, e.g. \"metrics.f DESC\"");
  auto* max_opt = search->add_option("--max-results", max_results, "Page size (single page)")
                      ->check(CLI::Range(1, 1000));
  search->add_option("--page-token", search_args.page_token, "Continue from a page token");
  std::string run_id;
  bool show_json = false;
  auto* show = runs->add_subcommand("show", "Show one run");
  show->add_option("run_id", run_id)->required();
  show->add_flag("--json", show_json, "Canonical JSON output");

  auto* calib = app.add_subcommand("calib", "Calibration tools");
  calib->require_subcommand(1);
  std::string run_a, run_b;
  bool diff_json = false;
  auto* diff = calib->add_subcommand("diff", "Diff the calibration sets of two runs");
  diff->add_option("run_a", run_a)->required();
  diff->add_option("run_b", run_b)->required();
  diff->add_flag("--json", diff_json, "Canonical JSON output");

  auto* fixtures = app.add_subcommand("fixtures", "Generate fixtures");
  fixtures->require_subcommand(1);
  std::int64_t seed = 0;
  std::int64_t qubits = 0;
  auto* fixture_calib = fixtures->add_subcommand("calibration", "Synthetic calibration set");
  fixture_calib->add_option("--seed", seed)->required();
  fixture_calib->add_option("--qubits", qubits)->required();

  ExportArgs export_args;
  auto* exporter = app.add_subcommand("export", "Export an experiment bundle");
  exporter->add_option("-e,--experiment", export_args.experiment, "Experiment name or id")
      ->required();
  exporter->add_option("--out", export_args.out_dir, "Bundle directory")->required();
  exporter->add_flag("--force", export_args.force, "Overwrite a non-empty directory");

  ImportArgs import_args;
  import_args.store = serve_args.store;
  auto* importer = app.add_subcommand("import", "Import an exported bundle");
  importer->group("");
  importer->add_option("--in", import_args.in_dir, "Bundle directory")->required();
  importer->add_option("--store", import_args.store, "Store root (env QTRACK_STORE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "qtrack: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto format = parse_format(globals.format);
  try {
    if (*serve) return cmd_serve(serve_args, err);
    if (*exp_list) {
      auto api = connect(globals);
      write_experiments(out, api.list_experiments(), format);
      return kExitOk;
    }
    if (*exp_create) {
      auto api = connect(globals);
      write_experiments(out, {api.create_experiment(exp_name)}, format);
      return kExitOk;
    }
    if (*search) {
      if (*max_opt) search_args.max_results = max_results;
      return cmd_runs_search(globals, search_args, format, out, err);
    }
    if (*show) {
      auto api = connect(globals);
      auto run = api.get_run(run_id);
      if (show_json || format == OutputFormat::kJson) {
        write_line(out, run);
      } else {
        show_run(out, run);
      }
      return kExitOk;
    }
    if (*diff) {
      auto api = connect(globals);
      auto base = calibration_of(api.get_run(run_a));
      auto other = calibration_of(api.get_run(run_b));
      auto result = diff_calibration(base, other);
      if (diff_json || format == OutputFormat::kJson) {
        write_line(out, result);
      } else {
        show_diff(out, result, format);
      }
      return kExitOk;
    }
    if (*fixture_calib) {
      if (qubits < 1) throw UsageError("--qubits must be at least 1");
      write_line(out, generate_synthetic_calibration(seed, qubits));
      return kExitOk;
    }
    if (*exporter) return cmd_export(globals, export_args, out);
    if (*importer) return cmd_import(import_args, out);
  } catch (const UsageError& e) {
    err << "qtrack: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qtrack: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace qtrack::cli
