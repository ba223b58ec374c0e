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

#include <optional>
#include <string>
#include <vector>

#include "qtrack/query/filter.hpp"
#include "qtrack/storage/pagination.hpp"
#include "qtrack/storage/store.hpp"

namespace qtrack::query {

struct SearchRequest {
  std::vector<std::string> experiment_ids;
  std::string filter;
  // Wire form, e.g. {"metrics.fidelity DESC", "params.shots"}.
  std::vector<std::string> order_by;
  std::size_t max_results = storage::kDefaultMaxResults;
  std::optional<std::string> page_token;
};

// Keeps the runs matching `expr` and sorts them by `order` (run_id asc as the
// final tie-break).
std::vector<Run> filter_and_sort(std::vector<Run> runs, const FilterExpr& expr,
                                 const OrderBySpec& order);

// Errors: ParseError for bad filter or order_by text, kNotFound for unknown
// experiments, kInvalidArgument for an empty experiment list or max_results
// outside [1, 1000], kInvalidToken for a token from another query.
storage::RunPage search_runs(const storage::Store& store, const SearchRequest& request);

}  // namespace qtrack::query
