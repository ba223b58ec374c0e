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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qtrack/core/types.hpp"

namespace qtrack::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { kTable, kJson, kCsv };

// Runs one command line; stdout data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// One RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

// Column set for tabular run listings: the fixed run columns followed by the
// sorted union of params.*, tags.* and metrics.* (latest value) keys.
std::vector<std::string> run_columns(const std::vector<Run>& runs);
std::vector<std::string> run_row(const Run& run, const std::vector<std::string>& columns);

void write_runs(std::ostream& out, const std::vector<Run>& runs, OutputFormat format);

// Shortest round-trip decimal form.
std::string format_number(double value);

}  // namespace qtrack::cli
