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

// Run-search filter language.
//
//   filter  := [ clause { "AND" clause } ]
//   clause  := key comparator value
//   key     := [ namespace "." ] part          part := ident | `any text`
//   value   := string | number | "(" string { "," string } ")"
//
// Namespaces are params, metrics, tags and attributes; a key without one is
// an attribute. Comparators are = != < <= > >= LIKE ILIKE IN. Strings use
// single or double quotes with backslash escapes; numbers are decimal with an
// optional sign and fraction. Keywords are case-insensitive.
//
// Typing rules checked at parse time:
//   params, tags            string operand; = != LIKE ILIKE
//   metrics                 numeric operand; = != < <= > >=
//   attributes.run_id       string operand; = != LIKE ILIKE IN
//   attributes.status, attributes.experiment_id
//                           string operand; = != LIKE ILIKE
//   attributes.start_time, attributes.end_time
//                           numeric operand; = != < <= > >=

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtrack/core/types.hpp"

namespace qtrack::query {

enum class Namespace { kParams, kMetrics, kTags, kAttributes };

enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe, kLike, kILike, kIn };

std::string_view to_string(Namespace ns);
std::string_view to_string(Comparator cmp);

using StringList = std::vector<std::string>;
using Operand = std::variant<std::string, double, StringList>;

struct Clause {
  Namespace ns = Namespace::kAttributes;
  std::string key;
  Comparator comparator = Comparator::kEq;
  Operand operand;

  friend bool operator==(const Clause&, const Clause&) = default;
};

// Conjunction of clauses; no clauses matches every run.
struct FilterExpr {
  std::vector<Clause> clauses;

  bool match_all() const { return clauses.empty(); }

  friend bool operator==(const FilterExpr&, const FilterExpr&) = default;
};

// Throws qtrack::ParseError carrying the byte offset of the first invalid
// token. Never crashes on arbitrary bytes.
FilterExpr parse_filter(std::string_view text);

// Canonical text: namespace always spelled out, single spaces, double-quoted
// strings, shortest round-trip decimal numbers. parse_filter(print_filter(e))
// == e for every well-formed expression.
std::string print_filter(const FilterExpr& expr);

// Clauses on keys the run does not have evaluate to false.
bool eval_filter(const FilterExpr& expr, const Run& run);

// `%` matches any run of bytes; everything else is literal. The ILIKE form
// folds ASCII case.
bool like_match(std::string_view text, std::string_view pattern,
                bool case_insensitive);

struct OrderKey {
  Namespace ns = Namespace::kAttributes;
  std::string key;
  bool descending = false;

  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

// Empty means the default, attributes.start_time DESC. run_id ascending is
// always the final tie-break.
struct OrderBySpec {
  std::vector<OrderKey> keys;

  friend bool operator==(const OrderBySpec&, const OrderBySpec&) = default;
};

// Wire form of one element: `metrics.fidelity DESC` (direction optional,
// ascending by default).
OrderKey parse_order_key(std::string_view text);
std::string print_order_key(const OrderKey& key);
OrderBySpec parse_order_by(const std::vector<std::string>& elements);

const OrderBySpec& default_order();

// Strict weak ordering over runs for `spec`; runs lacking a sort key come
// after runs that have it regardless of direction.
bool run_less(const OrderBySpec& spec, const Run& a, const Run& b);

}  // namespace qtrack::query
