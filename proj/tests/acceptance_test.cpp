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

// End-to-end acceptance checks. Each test is one criterion; a listener prints
// a single PASS/FAIL line per criterion with its runtime.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "generators.hpp"
#include "live_server.hpp"
#include "process.hpp"
#include "qtrack/client/tracking_client.hpp"
#include "qtrack/core/calibration.hpp"
#include "qtrack/core/hashing.hpp"
#include "qtrack/core/serialization.hpp"
#include "qtrack/error.hpp"
#include "qtrack/query/filter.hpp"
#include "temp_dir.hpp"

namespace qtrack::acceptance {
namespace {

namespace fs = std::filesystem;
using client::ApiFailure;
using client::SearchQuery;
using client::TrackingClient;
using qtrack::testing::EnvOverrides;
using qtrack::testing::LiveServer;
using qtrack::testing::ManualClock;
using qtrack::testing::Rng;
using qtrack::testing::TempDir;
using Clock = std::chrono::steady_clock;

constexpr std::int64_t kT0 = 1'700'000'000'000;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1x1 grayscale PNG; digest computed independently with Python's hashlib.
const std::string kPng = [] {
  const unsigned char bytes[] = {
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
      0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x00, 0x00, 0x00,
      0x00, 0x3a, 0x7e, 0x9b, 0x55, 0x00, 0x00, 0x00, 0x0a, 0x49, 0x44, 0x41, 0x54, 0x78,
      0x9c, 0x63, 0x68, 0x00, 0x00, 0x00, 0x82, 0x00, 0x81, 0x77, 0xcd, 0x72, 0xb6, 0x00,
      0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
  return std::string(reinterpret_cast<const char*>(bytes), sizeof bytes);
}();
constexpr const char* kPngSha256 =
    "a1abfd410973b0111c215baa879b9edcd739e601659ba44168269767cc2e9108";

std::vector<std::string> ids_of(const std::vector<qtrack::Run>& runs) {
  std::vector<std::string> out;
  for (const auto& r : runs) out.push_back(r.run_id);
  return out;
}

int status_of(const std::function<void()>& fn) {
  try {
    fn();
    return 200;
  } catch (const ApiFailure& e) {
    return e.http_status();
  }
}

// --- 1 ----------------------------------------------------------------------------------

TEST(Acceptance, C1_TrackedRunReplay) {
  const auto start = Clock::now();
  TempDir dir;
  LiveServer server(dir / "store");
  TrackingClient api(server.uri());

  auto experiment = api.set_experiment("Qx VTT Demo for QCE");
  auto run = api.create_run(experiment.experiment_id).run_id;
  api.set_tag(run, "Training info", "Qiskit on Qx");
  api.log_param(run, "shots", "500");

  const auto calibration = generate_synthetic_calibration(2024, 50);
  const auto calibration_json = encode(calibration);
  const std::map<std::string, std::string> uploads = {
      {"results.png", kPng},
      {"calibration_set_id.txt", calibration.calibration_set_id},
      {"calibration_data.json", calibration_json}};
  const std::map<std::string, std::string> media = {
      {"results.png", "image/png"},
      {"calibration_set_id.txt", "text/plain"},
      {"calibration_data.json", "application/json"}};
  for (const auto& [path, bytes] : uploads) api.put_artifact(run, path, bytes, media.at(path));

  ExecutionRecord execution;
  execution.shots = 500;
  execution.counts = {{"00", 253}, {"01", 4}, {"10", 6}, {"11", 237}};
  execution.backend_name = "mock-q50";
  execution.calibration_set_id = calibration.calibration_set_id;
  execution.submitted_at = kT0;
  execution.completed_at = kT0 + 1500;
  api.log_provenance(run, {{"calibration", calibration}, {"execution", execution}});
  api.update_run(run, RunStatus::kFinished);

  const auto got = api.get_run(run);
  EXPECT_EQ(got.experiment_id, experiment.experiment_id);
  EXPECT_EQ(api.get_experiment(experiment.experiment_id).name, "Qx VTT Demo for QCE");
  EXPECT_EQ(got.status, RunStatus::kFinished);
  ASSERT_TRUE(got.end_time);
  EXPECT_GE(*got.end_time, got.start_time);
  EXPECT_EQ(got.tags, (StringMap{{"Training info", "Qiskit on Qx"}}));
  EXPECT_EQ(got.params, (StringMap{{"shots", "500"}}));
  EXPECT_EQ(got.provenance.calibration, calibration);
  EXPECT_EQ(got.provenance.execution, execution);
  ASSERT_EQ(got.artifacts.size(), 3u);
  for (const auto& ref : got.artifacts) {
    const auto& expected = uploads.at(ref.path);
    EXPECT_EQ(ref.sha256, sha256_hex(expected)) << ref.path;
    EXPECT_EQ(ref.size_bytes, expected.size()) << ref.path;
    EXPECT_EQ(ref.media_type, media.at(ref.path)) << ref.path;
    const auto fetched = api.get_artifact(run, ref.path);
    EXPECT_EQ(fetched, expected) << ref.path;
    EXPECT_EQ(sha256_hex(fetched), ref.sha256) << ref.path;
  }
  EXPECT_EQ(sha256_hex(api.get_artifact(run, "results.png")), kPngSha256);
  EXPECT_EQ(decode<CalibrationSet>(api.get_artifact(run, "calibration_data.json")), calibration);
  EXPECT_LT(seconds_since(start), 5.0);
}

// --- 2 ----------------------------------------------------------------------------------

TEST(Acceptance, C2_ParamSearch) {
  const auto start = Clock::now();
  TempDir dir;
  ManualClock clock;
  server::ServerOptions options;
  options.clock = clock.fn();
  LiveServer server(dir / "store", options);
  TrackingClient api(server.uri());

  auto experiment = api.set_experiment("Qx VTT Demo for QCE").experiment_id;
  std::vector<std::string> ids;
  for (const char* shots : {"500", "500", "1000"}) {
    clock.set(clock.now->load() + 1000);
    auto run = api.create_run(experiment).run_id;
    api.log_param(run, "shots", shots);
    api.update_run(run, RunStatus::kFinished);
    ids.push_back(run);
  }
  auto matched = api.search_all(SearchQuery{{experiment}, R"(params.shots = "500")"});
  ASSERT_EQ(matched.size(), 2u);
  for (const auto& run : matched) EXPECT_EQ(run.params.at("shots"), "500");
  EXPECT_EQ(std::set<std::string>({matched[0].run_id, matched[1].run_id}),
            std::set<std::string>({ids[0], ids[1]}));

  auto all = api.search_all(SearchQuery{{experiment}});
  EXPECT_EQ(ids_of(all), (std::vector<std::string>{ids[2], ids[1], ids[0]}));
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GT(all[i - 1].start_time, all[i].start_time);
  EXPECT_LT(seconds_since(start), 2.0);
}

// --- 3 ----------------------------------------------------------------------------------

// Runs are written straight into the store so statuses, times and metric
// histories can be arbitrary; every search goes through the HTTP API.
TEST(Acceptance, C3_FilterOracleEquivalence) {
  const auto start = Clock::now();
  constexpr int kRuns = 1200;
  constexpr int kFilters = 250;
  TempDir dir;
  Rng rng(20261016);
  std::vector<qtrack::Run> runs;
  std::vector<std::string> experiments;
  {
    auto store = storage::Store::open(dir / "store", true);
    for (int e = 0; e < 3; ++e) {
      experiments.push_back(
          store.create_experiment("oracle-" + std::to_string(e), {}, kT0).experiment_id);
    }
    for (int i = 0; i < kRuns; ++i) {
      runs.push_back(qtrack::testing::random_run(rng, experiments[i % 3], kT0));
      store.put_run(runs.back());
    }
  }
  LiveServer server(dir / "store");
  TrackingClient api(server.uri());

  std::size_t mismatches = 0;
  std::size_t nonempty = 0;
  for (int f = 0; f < kFilters; ++f) {
    auto filter = qtrack::testing::random_filter(rng, runs, kT0);
    auto order = qtrack::testing::random_order(rng);
    SearchQuery query{experiments, filter.text, order.text};
    query.max_results = 1000;
    auto got = api.search_all(query);
    auto expected = qtrack::testing::oracle_search(runs, filter, order);
    if (!expected.empty()) ++nonempty;
    if (got != expected) {
      ++mismatches;
      ADD_FAILURE() << "filter: " << filter.text << " order size " << order.text.size()
                    << " got " << got.size() << " expected " << expected.size();
    }
  }
  EXPECT_EQ(mismatches, 0u);
  EXPECT_GT(nonempty, static_cast<std::size_t>(kFilters) / 4);  // the filters are not vacuous
  EXPECT_LT(seconds_since(start), 60.0);
}

// --- 4 ----------------------------------------------------------------------------------

TEST(Acceptance, C4_ParserRobustness) {
  const auto start = Clock::now();
  Rng rng(4);
  std::size_t round_trip_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    auto expr = qtrack::testing::random_ast(rng);
    const auto text = query::print_filter(expr);
    try {
      if (query::parse_filter(text) != expr) ++round_trip_failures;
    } catch (const ParseError&) {
      ++round_trip_failures;
    }
  }
  EXPECT_EQ(round_trip_failures, 0u);

  std::size_t parsed = 0, rejected = 0, unpositioned = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto text = qtrack::testing::random_fuzz_input(rng);
    try {
      query::parse_filter(text);
      ++parsed;
    } catch (const ParseError& e) {
      ++rejected;
      if (e.offset() > text.size()) ++unpositioned;
    }
  }
  EXPECT_EQ(parsed + rejected, 10000u);
  EXPECT_EQ(unpositioned, 0u);
  EXPECT_LT(seconds_since(start), 60.0);
}

// --- 5 ----------------------------------------------------------------------------------

TEST(Acceptance, C5_ConcurrentMetricDurability) {
  const auto start = Clock::now();
  TempDir dir;
  LiveServer server(dir / "store");
  std::string run;
  {
    TrackingClient api(server.uri());
    auto exp = api.set_experiment("concurrency").experiment_id;
    run = api.create_run(exp).run_id;
  }
  std::atomic<int> failures{0};
  std::vector<std::thread> clients;
  for (int c = 0; c < 8; ++c) {
    clients.emplace_back([&, c] {
      TrackingClient api(server.uri());
      for (int i = 0; i < 250; ++i) {
        try {
          api.log_metric(run, {"loss", c + i / 1000.0, kT0 + i, c * 250 + i});
        } catch (const std::exception&) {
          failures++;
        }
      }
    });
  }
  for (auto& t : clients) t.join();
  EXPECT_EQ(failures.load(), 0);

  server.restart();
  TrackingClient api(server.uri());
  auto history = api.metric_history(run, "loss");
  EXPECT_EQ(history.size(), 2000u);
  std::set<std::int64_t> steps;
  for (const auto& p : history) steps.insert(p.step);
  EXPECT_EQ(steps.size(), 2000u);

  std::size_t torn = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "store")) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    const auto all = text.str();
    if (!all.empty() && all.back() != '\n') ++torn;
    std::istringstream lines(all);
    for (std::string line; std::getline(lines, line);) {
      try {
        if (!parse_json(line).is_object()) ++torn;
      } catch (const Error&) {
        ++torn;
      }
    }
  }
  EXPECT_EQ(torn, 0u);
  EXPECT_LT(seconds_since(start), 30.0);
}

// --- 6 ----------------------------------------------------------------------------------

TEST(Acceptance, C6_ValidationGates) {
  TempDir dir;
  LiveServer server(dir / "store");
  TrackingClient api(server.uri());
  auto exp = api.set_experiment("gates").experiment_id;
  auto run = api.create_run(exp).run_id;

  ExecutionRecord execution;
  execution.shots = 500;
  execution.counts = {{"00", 250}, {"11", 249}};
  execution.backend_name = "mock-q50";
  execution.submitted_at = kT0;
  execution.completed_at = kT0;
  auto res = api.request("POST", "/api/v1/runs/" + run + "/provenance",
                         Json{{"execution", execution}}.dump());
  EXPECT_EQ(res.status, 400);
  auto violations = parse_json(res.body)["details"]["violations"];
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0]["field"], "execution.counts");

  auto calibration = generate_synthetic_calibration(9, 3);
  calibration.gates[0].fidelity = 1.2;
  EXPECT_EQ(status_of([&] { api.log_provenance(run, {{"calibration", calibration}}); }), 400);

  api.log_param(run, "shots", "500");
  EXPECT_EQ(status_of([&] { api.log_param(run, "shots", "600"); }), 409);

  api.update_run(run, RunStatus::kFinished);
  EXPECT_EQ(status_of([&] { api.log_metric(run, {"late", 1.0, kT0, 0}); }), 409);
  EXPECT_EQ(status_of([&] { api.log_param(run, "late", "1"); }), 409);
  EXPECT_TRUE(api.get_run(run).metrics.empty());
}

// --- 7 ----------------------------------------------------------------------------------

bool is_zero(const CalibrationDiff& d) {
  for (const auto& q : d.qubit_deltas) {
    if (q.d_t1_us != 0.0 || q.d_t2_us != 0.0 || q.d_readout_fidelity != 0.0) return false;
  }
  for (const auto& g : d.gate_deltas) {
    if (g.d_fidelity != 0.0) return false;
  }
  return d.added_qubits.empty() && d.removed_qubits.empty();
}

bool antisymmetric(const CalibrationDiff& ab, const CalibrationDiff& ba) {
  if (ab.qubit_deltas.size() != ba.qubit_deltas.size() ||
      ab.gate_deltas.size() != ba.gate_deltas.size() || ab.added_qubits != ba.removed_qubits ||
      ab.removed_qubits != ba.added_qubits) {
    return false;
  }
  for (std::size_t i = 0; i < ab.qubit_deltas.size(); ++i) {
    const auto& x = ab.qubit_deltas[i];
    const auto& y = ba.qubit_deltas[i];
    if (x.qubit_index != y.qubit_index || x.d_t1_us != -y.d_t1_us || x.d_t2_us != -y.d_t2_us ||
        x.d_readout_fidelity != -y.d_readout_fidelity) {
      return false;
    }
  }
  for (std::size_t i = 0; i < ab.gate_deltas.size(); ++i) {
    const auto& x = ab.gate_deltas[i];
    const auto& y = ba.gate_deltas[i];
    if (x.gate_name != y.gate_name || x.qubit_indices != y.qubit_indices ||
        x.d_fidelity != -y.d_fidelity) {
      return false;
    }
  }
  return true;
}

TEST(Acceptance, C7_CalibrationDiffProperties) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto set = generate_synthetic_calibration(static_cast<std::int64_t>(rng() % 100000),
                                              1 + static_cast<std::int64_t>(rng() % 60));
    EXPECT_TRUE(is_zero(diff_calibration(set, set)));
  }
  std::size_t broken = 0;
  for (int i = 0; i < 100; ++i) {
    auto a = generate_synthetic_calibration(static_cast<std::int64_t>(rng() % 100000),
                                            1 + static_cast<std::int64_t>(rng() % 60));
    auto b = generate_synthetic_calibration(static_cast<std::int64_t>(rng() % 100000),
                                            1 + static_cast<std::int64_t>(rng() % 60));
    if (!antisymmetric(diff_calibration(a, b), diff_calibration(b, a))) ++broken;
  }
  EXPECT_EQ(broken, 0u);

  TempDir dir;
  LiveServer server(dir / "store");
  TrackingClient api(server.uri());
  auto exp = api.set_experiment("calibration").experiment_id;
  const auto one = generate_synthetic_calibration(1, 50);
  const auto two = generate_synthetic_calibration(2, 48);
  auto a = api.create_run(exp).run_id;
  auto b = api.create_run(exp).run_id;
  api.log_provenance(a, {{"calibration", one}});
  api.log_provenance(b, {{"calibration", two}});
  const EnvOverrides env{{"QTRACK_TRACKING_URI", server.uri()}, {"QTRACK_AUTH_TOKEN", std::nullopt}};
  auto forward = qtrack::testing::run_cli({"calib", "diff", a, b, "--json"}, env);
  auto backward = qtrack::testing::run_cli({"calib", "diff", b, a, "--json"}, env);
  ASSERT_EQ(forward.exit_code, 0) << forward.err;
  ASSERT_EQ(backward.exit_code, 0) << backward.err;
  EXPECT_EQ(decode<CalibrationDiff>(forward.out), diff_calibration(one, two));
  EXPECT_EQ(forward.out, encode(diff_calibration(one, two)) + "\n");
  EXPECT_EQ(backward.out, encode(diff_calibration(two, one)) + "\n");
}

// --- 8 ----------------------------------------------------------------------------------

TEST(Acceptance, C8_ExportImportRoundTrip) {
  TempDir dir;
  Rng rng(8);
  std::vector<qtrack::Run> runs;
  std::string exp;
  {
    auto store = storage::Store::open(dir / "source", true);
    exp = store.create_experiment("shared results", {{"team", "alpha"}}, kT0).experiment_id;
    for (int i = 0; i < 60; ++i) {
      auto run = qtrack::testing::random_run(rng, exp, kT0);
      store.put_run(run);
      if (i % 4 == 0) store.put_artifact(run.run_id, "results.png", kPng, "image/png");
      if (i % 5 == 0) {
        store.put_artifact(run.run_id, "notes/run.txt", "run " + std::to_string(i), "text/plain");
      }
      runs.push_back(store.get_run(run.run_id));
    }
  }
  LiveServer source(dir / "source");
  const EnvOverrides env{{"QTRACK_TRACKING_URI", source.uri()}, {"QTRACK_AUTH_TOKEN", std::nullopt}};
  auto exported = qtrack::testing::run_cli(
      {"export", "-e", "shared results", "--out", (dir / "bundle").string()}, env);
  ASSERT_EQ(exported.exit_code, 0) << exported.err;
  auto imported = qtrack::testing::run_cli(
      {"import", "--in", (dir / "bundle").string(), "--store", (dir / "fresh").string()});
  ASSERT_EQ(imported.exit_code, 0) << imported.err;

  LiveServer fresh(dir / "fresh");
  TrackingClient before(source.uri());
  TrackingClient after(fresh.uri());
  EXPECT_EQ(after.get_experiment(exp), before.get_experiment(exp));
  std::size_t differing = 0;
  for (int f = 0; f < 40; ++f) {
    auto filter = qtrack::testing::random_filter(rng, runs, kT0);
    auto order = qtrack::testing::random_order(rng);
    SearchQuery query{{exp}, filter.text, order.text};
    if (after.search_all(query) != before.search_all(query)) ++differing;
  }
  EXPECT_EQ(differing, 0u);
  for (const auto& run : runs) {
    for (const auto& ref : run.artifacts) {
      EXPECT_EQ(after.get_artifact(run.run_id, ref.path), before.get_artifact(run.run_id, ref.path));
    }
  }
}

// --- reporting --------------------------------------------------------------------------

class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestEnd(const ::testing::TestInfo& info) override {
    static const std::map<std::string, std::string> titles = {
        {"C1_TrackedRunReplay", "1 tracked-run replay over HTTP (< 5 s)"},
        {"C2_ParamSearch", "2 param search and default order (< 2 s)"},
        {"C3_FilterOracleEquivalence", "3 filter oracle equivalence, 1200 runs x 250 filters (< 60 s)"},
        {"C4_ParserRobustness", "4 parser round trip and fuzz (< 60 s)"},
        {"C5_ConcurrentMetricDurability", "5 8 clients x 250 points survive restart (< 30 s)"},
        {"C6_ValidationGates", "6 validation gates 400/400/409/409"},
        {"C7_CalibrationDiffProperties", "7 calibration diff properties and CLI parity"},
        {"C8_ExportImportRoundTrip", "8 export/import round trip"},
    };
    auto it = titles.find(info.name());
    const std::string title = it == titles.end() ? info.name() : it->second;
    const auto* result = info.result();
    std::printf("%s  criterion %s  [%.2f s]\n", result->Passed() ? "PASS" : "FAIL", title.c_str(),
                static_cast<double>(result->elapsed_time()) / 1000.0);
    std::fflush(stdout);
  }
};

}  // namespace
}  // namespace qtrack::acceptance

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(
      new qtrack::acceptance::CriterionPrinter);
  return RUN_ALL_TESTS();
}
