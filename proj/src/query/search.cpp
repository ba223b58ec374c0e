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

#include "qtrack/query/search.hpp"

#include <algorithm>
#include <set>

#include "qtrack/error.hpp"

namespace qtrack::query {

std::vector<Run> filter_and_sort(std::vector<Run> runs, const FilterExpr& expr,
                                 const OrderBySpec& order) {
  std::erase_if(runs, [&](const Run& run) { return !eval_filter(expr, run); });
  std::sort(runs.begin(), runs.end(),
            [&](const Run& a, const Run& b) { return run_less(order, a, b); });
  return runs;
}

storage::RunPage search_runs(const storage::Store& store, const SearchRequest& request) {
  if (request.experiment_ids.empty()) {
    fail(ErrorCode::kInvalidArgument, "experiment_ids must not be empty");
  }
  const auto expr = parse_filter(request.filter);
  const auto order = parse_order_by(request.order_by);
  const std::set<std::string> experiment_ids(request.experiment_ids.begin(),
                                             request.experiment_ids.end());

  // Binds page tokens to the normalized query.
  std::string query_key = "search";
  for (const auto& id : experiment_ids) query_key += "|" + id;
  query_key += "|" + print_filter(expr);
  for (const auto& k : order.keys) query_key += "|" + print_order_key(k);

  std::vector<Run> runs;
  for (const auto& id : experiment_ids) {
    auto batch = store.load_runs(id);
    runs.insert(runs.end(), std::make_move_iterator(batch.begin()),
                std::make_move_iterator(batch.end()));
  }
  return storage::paginate(filter_and_sort(std::move(runs), expr, order),
                           request.max_results, request.page_token, query_key);
}

}  // namespace qtrack::query
