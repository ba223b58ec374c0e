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

// Hand-rolled generators for property tests, plus an oracle for the search
// language written without the library's parser or evaluator.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qtrack/core/types.hpp"
#include "qtrack/query/filter.hpp"

namespace qtrack::testing {

using Rng = std::mt19937_64;

std::string random_hex_id(Rng& rng);

// Runs drawn from small value pools so filters hit, miss and tie often.
// Start times fall in [base_time, base_time + 200).
Run random_run(Rng& rng, const std::string& experiment_id, std::int64_t base_time);

enum class Field { kParam, kMetric, kTag, kAttribute };

using ModelValue = std::variant<std::string, double, std::vector<std::string>>;

struct ModelClause {
  Field field = Field::kAttribute;
  std::string key;
  std::string op;  // upper-case: = != < <= > >= LIKE ILIKE IN
  ModelValue value;
};

struct ModelFilter {
  std::vector<ModelClause> clauses;
  std::string text;  // rendered with random spelling variations
};

struct ModelOrderKey {
  Field field = Field::kAttribute;
  std::string key;
  bool descending = false;
};

struct ModelOrder {
  std::vector<ModelOrderKey> keys;  // empty: start_time descending
  std::vector<std::string> text;
};

// Filters over the pools used by random_run; `runs` supplies real ids.
ModelFilter random_filter(Rng& rng, const std::vector<Run>& runs, std::int64_t base_time);
ModelOrder random_order(Rng& rng);

bool oracle_match(const ModelFilter& filter, const Run& run);
// Filter, then sort with missing keys last and run_id ascending last.
std::vector<Run> oracle_search(const std::vector<Run>& runs, const ModelFilter& filter,
                               const ModelOrder& order);

// Well-typed library ASTs with arbitrary keys and operands.
query::FilterExpr random_ast(Rng& rng);

// Arbitrary bytes, biased toward filter-like fragments.
std::string random_fuzz_input(Rng& rng);

}  // namespace qtrack::testing
