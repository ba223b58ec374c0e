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

#include "generators.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <regex>
#include <tuple>

namespace qtrack::testing {
namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

const std::vector<std::string> kParamKeys = {"shots", "optimizer", "backend", "seed"};
const std::vector<std::vector<std::string>> kParamValues = {
    {"500", "1000", "2000"},
    {"spsa", "cobyla", "SPSA"},
    {"q50", "mock-q5", "Q50"},
    {"1", "2", "it's", "a\"b", "c\\d"},
};
const std::vector<std::string> kTagKeys = {"Training info", "team"};
const std::vector<std::vector<std::string>> kTagValues = {
    {"Qiskit on Qx", "qiskit on qx", "Cirq on Qx"},
    {"alpha", "beta"},
};
const std::vector<std::string> kMetricKeys = {"fidelity", "energy", "depth"};
const std::vector<double> kMetricValues = {0.8, 0.9, 0.92, 0.95, 1.0, -1.5, 0.5, 0.0};
const std::vector<std::string> kStatuses = {"RUNNING", "FINISHED", "FAILED", "KILLED"};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Random letter case for keywords.
std::string spell(Rng& rng, const std::string& keyword) {
  switch (uniform(rng, 0, 2)) {
    case 0: return upper(keyword);
    case 1: return lower(keyword);
    default: {
      std::string out = keyword;
      for (auto& c : out) {
        c = chance(rng, 0.5) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                             : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      return out;
    }
  }
}

std::string quote(Rng& rng, const std::string& value) {
  const char q = chance(rng, 0.5) ? '"' : '\'';
  std::string out(1, q);
  for (char c : value) {
    if (c == q || c == '\\') out += '\\';
    out += c;
  }
  out += q;
  return out;
}

std::string render_number(Rng& rng, double v) {
  char buffer[512];
  if (chance(rng, 0.5)) {
    std::snprintf(buffer, sizeof buffer, "%.17f", v);
    return buffer;
  }
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::fixed);
  std::string out(buffer, ptr);
  if (v >= 0 && chance(rng, 0.2)) out = "+" + out;
  return out;
}

bool is_ident(const std::string& key) {
  if (key.empty() || !(std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_')) {
    return false;
  }
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string render_key(Rng& rng, Field field, const std::string& key) {
  std::string ns;
  switch (field) {
    case Field::kParam: ns = chance(rng, 0.5) ? "params" : "param"; break;
    case Field::kMetric: ns = chance(rng, 0.5) ? "metrics" : "metric"; break;
    case Field::kTag: ns = chance(rng, 0.5) ? "tags" : "tag"; break;
    case Field::kAttribute: {
      int form = uniform(rng, 0, 2);
      if (form == 0) return key;
      ns = form == 1 ? "attributes" : "attribute";
      break;
    }
  }
  const bool quoted = !is_ident(key) || chance(rng, 0.1);
  return ns + "." + (quoted ? "`" + key + "`" : key);
}

// --- oracle lookups -----------------------------------------------------------

using Value = std::variant<double, std::string>;

std::optional<Value> lookup(const Run& run, Field field, const std::string& key) {
  switch (field) {
    case Field::kParam:
      if (run.params.count(key)) return run.params.at(key);
      return std::nullopt;
    case Field::kTag:
      if (run.tags.count(key)) return run.tags.at(key);
      return std::nullopt;
    case Field::kMetric: {
      auto it = run.metrics.find(key);
      if (it == run.metrics.end() || it->second.empty()) return std::nullopt;
      const MetricPoint* best = &it->second.front();
      for (const auto& p : it->second) {
        if (std::tie(p.step, p.timestamp, p.value) >
            std::tie(best->step, best->timestamp, best->value)) {
          best = &p;
        }
      }
      return best->value;
    }
    case Field::kAttribute:
      if (key == "run_id") return run.run_id;
      if (key == "experiment_id") return run.experiment_id;
      if (key == "status") return std::string(to_string(run.status));
      if (key == "start_time") return static_cast<double>(run.start_time);
      if (key == "end_time") {
        if (!run.end_time) return std::nullopt;
        return static_cast<double>(*run.end_time);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

bool like(const std::string& text, const std::string& pattern) {
  std::string re;
  for (char c : pattern) {
    if (c == '%') {
      re += "[\\s\\S]*";
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      re += c;
    } else {
      char buffer[8];
      std::snprintf(buffer, sizeof buffer, "\\x%02x", static_cast<unsigned char>(c));
      re += buffer;
    }
  }
  return std::regex_match(text, std::regex(re));
}

bool clause_matches(const ModelClause& c, const Run& run) {
  auto v = lookup(run, c.field, c.key);
  if (!v) return false;
  if (c.op == "IN") {
    const auto& list = std::get<std::vector<std::string>>(c.value);
    return std::find(list.begin(), list.end(), std::get<std::string>(*v)) != list.end();
  }
  if (const auto* text = std::get_if<std::string>(&*v)) {
    const auto& operand = std::get<std::string>(c.value);
    if (c.op == "=") return *text == operand;
    if (c.op == "!=") return *text != operand;
    if (c.op == "LIKE") return like(*text, operand);
    if (c.op == "ILIKE") return like(lower(*text), lower(operand));
    return false;
  }
  const double lhs = std::get<double>(*v);
  const double rhs = std::get<double>(c.value);
  if (c.op == "=") return lhs == rhs;
  if (c.op == "!=") return lhs != rhs;
  if (c.op == "<") return lhs < rhs;
  if (c.op == "<=") return lhs <= rhs;
  if (c.op == ">") return lhs > rhs;
  if (c.op == ">=") return lhs >= rhs;
  return false;
}

// Random printable or multibyte text without backticks.
std::string random_text(Rng& rng, int max_len) {
  static const std::vector<std::string> pieces = {
      "a", "Z", "0", "9", " ", "_", "-", ".", "%", "'", "\"", "\\", ",", "(", ")",
      "=", "<", "é", "µ", "量子", "\t", "AND", "like", "😀"};
  std::string out;
  int n = uniform(rng, 0, max_len);
  for (int i = 0; i < n; ++i) out += pick(rng, pieces);
  return out;
}

std::string random_key(Rng& rng) {
  std::string key;
  if (chance(rng, 0.6)) {
    static const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    static const std::string rest = first + "0123456789";
    key += first[uniform(rng, 0, static_cast<int>(first.size()) - 1)];
    int n = uniform(rng, 0, 12);
    for (int i = 0; i < n; ++i) key += rest[uniform(rng, 0, static_cast<int>(rest.size()) - 1)];
  } else {
    while (key.empty()) key = random_text(rng, 8);
  }
  return key;
}

double random_double(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    case 1: return static_cast<double>(uniform(rng, -1000, 1000));
    case 2: return std::uniform_real_distribution<double>(0, 1)(rng);
    case 3: return pick(rng, kMetricValues);
    default: {
      // Any finite bit pattern.
      for (;;) {
        std::uint64_t bits = rng();
        double d;
        std::memcpy(&d, &bits, sizeof d);
        if (std::isfinite(d)) return d;
      }
    }
  }
}

}  // namespace

std::string random_hex_id(Rng& rng) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 32; ++i) out += kHex[rng() & 0xF];
  return out;
}

Run random_run(Rng& rng, const std::string& experiment_id, std::int64_t base_time) {
  Run run;
  run.run_id = random_hex_id(rng);
  run.experiment_id = experiment_id;
  run.status = *parse_run_status(pick(rng, kStatuses));
  run.start_time = base_time + uniform(rng, 0, 199);
  if (is_terminal(run.status)) run.end_time = run.start_time + uniform(rng, 0, 99);
  for (std::size_t i = 0; i < kParamKeys.size(); ++i) {
    if (chance(rng, 0.7)) run.params[kParamKeys[i]] = pick(rng, kParamValues[i]);
  }
  for (std::size_t i = 0; i < kTagKeys.size(); ++i) {
    if (chance(rng, 0.6)) run.tags[kTagKeys[i]] = pick(rng, kTagValues[i]);
  }
  for (const auto& key : kMetricKeys) {
    if (!chance(rng, 0.7)) continue;
    auto& history = run.metrics[key];
    int n = uniform(rng, 1, 4);
    for (int i = 0; i < n; ++i) {
      MetricPoint p;
      p.key = key;
      p.value = chance(rng, 0.7) ? pick(rng, kMetricValues)
                                 : std::uniform_real_distribution<double>(-2, 2)(rng);
      p.timestamp = base_time + uniform(rng, 0, 2);
      p.step = uniform(rng, 0, 2);
      history.push_back(p);
    }
  }
  return run;
}

ModelFilter random_filter(Rng& rng, const std::vector<Run>& runs, std::int64_t base_time) {
  ModelFilter filter;
  const int n = uniform(rng, 0, 3);
  std::vector<std::string> parts;
  for (int i = 0; i < n; ++i) {
    ModelClause c;
    std::string op_text;
    std::string value_text;
    switch (uniform(rng, 0, 3)) {
      case 0:
      case 2: {
        const bool param = chance(rng, 0.6);
        c.field = param ? Field::kParam : Field::kTag;
        const auto& keys = param ? kParamKeys : kTagKeys;
        const auto& values = param ? kParamValues : kTagValues;
        std::size_t k = uniform(rng, 0, static_cast<int>(keys.size()));
        c.key = k < keys.size() ? keys[k] : "absent";
        c.op = pick(rng, std::vector<std::string>{"=", "!=", "LIKE", "ILIKE"});
        std::string operand;
        if (c.op == "LIKE" || c.op == "ILIKE") {
          operand = pick(rng, std::vector<std::string>{"%0", "5%", "%", "q%", "%Qx", "%o%",
                                                        "%'%", "Q50", "%\"%"});
        } else {
          operand = pick(rng, values[k < keys.size() ? k : 0]);
        }
        c.value = operand;
        value_text = quote(rng, operand);
        break;
      }
      case 1: {
        c.field = Field::kMetric;
        std::size_t k = uniform(rng, 0, static_cast<int>(kMetricKeys.size()));
        c.key = k < kMetricKeys.size() ? kMetricKeys[k] : "absent";
        c.op = pick(rng, std::vector<std::string>{"=", "!=", "<", "<=", ">", ">="});
        double v = pick(rng, kMetricValues);
        c.value = v;
        value_text = render_number(rng, v);
        break;
      }
      default: {
        c.field = Field::kAttribute;
        switch (uniform(rng, 0, 4)) {
          case 0:
            c.key = "status";
            c.op = pick(rng, std::vector<std::string>{"=", "!=", "LIKE", "ILIKE"});
            c.value = pick(rng, std::vector<std::string>{"RUNNING", "FINISHED", "finished",
                                                          "F%", "%ED", "%"});
            value_text = quote(rng, std::get<std::string>(c.value));
            break;
          case 1: {
            c.key = "run_id";
            c.op = "IN";
            std::vector<std::string> ids;
            int m = uniform(rng, 1, 3);
            for (int j = 0; j < m; ++j) {
              ids.push_back(runs.empty() || chance(rng, 0.2) ? random_hex_id(rng)
                                                             : pick(rng, runs).run_id);
            }
            value_text = "(";
            for (std::size_t j = 0; j < ids.size(); ++j) {
              if (j) value_text += chance(rng, 0.5) ? ", " : ",";
              value_text += quote(rng, ids[j]);
            }
            value_text += ")";
            c.value = ids;
            break;
          }
          case 2:
            c.key = "run_id";
            c.op = pick(rng, std::vector<std::string>{"=", "!=", "LIKE"});
            c.value = c.op == "LIKE" ? std::string("%") + random_hex_id(rng).substr(0, 1) + "%"
                                     : (runs.empty() ? random_hex_id(rng) : pick(rng, runs).run_id);
            value_text = quote(rng, std::get<std::string>(c.value));
            break;
          default:
            c.key = chance(rng, 0.5) ? "start_time" : "end_time";
            c.op = pick(rng, std::vector<std::string>{"=", "!=", "<", "<=", ">", ">="});
            c.value = static_cast<double>(base_time + uniform(rng, 0, 300));
            value_text = render_number(rng, std::get<double>(c.value));
            break;
        }
        break;
      }
    }
    op_text = (c.op == "LIKE" || c.op == "ILIKE" || c.op == "IN") ? spell(rng, c.op) : c.op;
    const char* gap = chance(rng, 0.8) ? " " : "  ";
    parts.push_back(render_key(rng, c.field, c.key) + gap + op_text + gap + value_text);
    filter.clauses.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) filter.text += " " + spell(rng, "AND") + " ";
    filter.text += parts[i];
  }
  return filter;
}

ModelOrder random_order(Rng& rng) {
  static const std::vector<std::pair<Field, std::string>> keys = {
      {Field::kMetric, "fidelity"}, {Field::kMetric, "energy"},   {Field::kParam, "shots"},
      {Field::kParam, "optimizer"}, {Field::kTag, "team"},        {Field::kAttribute, "start_time"},
      {Field::kAttribute, "end_time"}, {Field::kAttribute, "status"}, {Field::kMetric, "absent"}};
  ModelOrder order;
  int n = uniform(rng, 0, 2);
  for (int i = 0; i < n; ++i) {
    const auto& [field, key] = pick(rng, keys);
    ModelOrderKey k{field, key, chance(rng, 0.5)};
    std::string text = render_key(rng, field, key);
    if (k.descending) {
      text += " " + spell(rng, "DESC");
    } else if (chance(rng, 0.5)) {
      text += " " + spell(rng, "ASC");
    }
    order.keys.push_back(k);
    order.text.push_back(text);
  }
  return order;
}

bool oracle_match(const ModelFilter& filter, const Run& run) {
  for (const auto& c : filter.clauses) {
    if (!clause_matches(c, run)) return false;
  }
  return true;
}

std::vector<Run> oracle_search(const std::vector<Run>& runs, const ModelFilter& filter,
                               const ModelOrder& order) {
  std::vector<Run> out;
  for (const auto& run : runs) {
    if (oracle_match(filter, run)) out.push_back(run);
  }
  auto keys = order.keys;
  if (keys.empty()) keys.push_back({Field::kAttribute, "start_time", true});
  std::sort(out.begin(), out.end(), [&](const Run& a, const Run& b) {
    for (const auto& k : keys) {
      auto va = lookup(a, k.field, k.key);
      auto vb = lookup(b, k.field, k.key);
      if (!va && !vb) continue;
      if (!va || !vb) return vb.has_value() == false;
      if (*va == *vb) continue;
      return k.descending ? *vb < *va : *va < *vb;
    }
    return a.run_id < b.run_id;
  });
  return out;
}

query::FilterExpr random_ast(Rng& rng) {
  using query::Comparator;
  using query::Namespace;
  query::FilterExpr expr;
  int n = uniform(rng, 0, 5);
  for (int i = 0; i < n; ++i) {
    query::Clause c;
    switch (uniform(rng, 0, 3)) {
      case 0:
      case 1:
        c.ns = chance(rng, 0.5) ? Namespace::kParams : Namespace::kTags;
        c.key = random_key(rng);
        c.comparator = pick(rng, std::vector<Comparator>{Comparator::kEq, Comparator::kNe,
                                                         Comparator::kLike, Comparator::kILike});
        c.operand = random_text(rng, 10);
        break;
      case 2:
        c.ns = Namespace::kMetrics;
        c.key = random_key(rng);
        c.comparator = static_cast<Comparator>(uniform(rng, 0, 5));
        c.operand = random_double(rng);
        break;
      default: {
        c.ns = Namespace::kAttributes;
        int kind = uniform(rng, 0, 2);
        if (kind == 0) {
          c.key = "run_id";
          c.comparator = Comparator::kIn;
          query::StringList list;
          int m = uniform(rng, 1, 4);
          for (int j = 0; j < m; ++j) list.push_back(random_text(rng, 6));
          c.operand = list;
        } else if (kind == 1) {
          c.key = pick(rng, std::vector<std::string>{"run_id", "status", "experiment_id"});
          c.comparator = pick(rng, std::vector<Comparator>{Comparator::kEq, Comparator::kNe,
                                                           Comparator::kLike, Comparator::kILike});
          c.operand = random_text(rng, 10);
        } else {
          c.key = chance(rng, 0.5) ? "start_time" : "end_time";
          c.comparator = static_cast<Comparator>(uniform(rng, 0, 5));
          c.operand = random_double(rng);
        }
        break;
      }
    }
    expr.clauses.push_back(std::move(c));
  }
  return expr;
}

std::string random_fuzz_input(Rng& rng) {
  static const std::vector<std::string> fragments = {
      "params.", "metrics.", "tags.", "attributes.", "run_id", "status", "start_time",
      " AND ", " and ", "=", "!=", "<", "<=", ">", ">=", " LIKE ", " ILIKE ", " IN ",
      "\"", "'", "`", "(", ")", ",", ".", "-", "+", "0.5", "500", "\\", "%", " ",
      "shots", "fidelity", "\xff", "\xc3", "\xe2\x82", std::string(1, '\0'), "é", "1.", ".5", "--1"};
  std::string out;
  int n = uniform(rng, 0, 24);
  for (int i = 0; i < n; ++i) {
    if (chance(rng, 0.35)) {
      out += static_cast<char>(rng() & 0xFF);
    } else {
      out += pick(rng, fragments);
    }
  }
  return out;
}

}  // namespace qtrack::testing
