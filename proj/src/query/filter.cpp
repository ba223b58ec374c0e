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

#include "qtrack/query/filter.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "qtrack/core/digest.hpp"
#include "qtrack/error.hpp"

namespace qtrack::query {
namespace {

// --- lexer ------------------------------------------------------------------

enum class Tok {
  kIdent,
  kQuotedIdent,
  kDot,
  kString,
  kNumber,
  kOp,
  kLParen,
  kRParen,
  kComma,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::size_t offset = 0;
  std::string text;  // identifier, unescaped string, operator, or number text
  double number = 0.0;
};

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_blank(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

// Offset of the first byte that does not start a valid UTF-8 sequence.
std::optional<std::size_t> first_invalid_utf8(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) {
    auto c = static_cast<std::uint8_t>(text[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c & 0xe0) == 0xc0) len = 2;
    else if ((c & 0xf0) == 0xe0) len = 3;
    else if ((c & 0xf8) == 0xf0) len = 4;
    if (len == 0 || i + len > text.size() || !is_valid_utf8(text.substr(i, len))) {
      return i;
    }
    i += len;
  }
  return std::nullopt;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      while (pos_ < text_.size() && is_blank(text_[pos_])) ++pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::kEnd, text_.size(), {}, 0.0});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  Token next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      return {Tok::kIdent, start, std::string(text_.substr(start, pos_ - start)), 0.0};
    }
    if (c == '`') {
      auto end = text_.find('`', start + 1);
      if (end == std::string_view::npos) {
        throw ParseError(start, "unterminated quoted identifier");
      }
      if (end == start + 1) throw ParseError(start, "empty quoted identifier");
      pos_ = end + 1;
      return {Tok::kQuotedIdent, start,
              std::string(text_.substr(start + 1, end - start - 1)), 0.0};
    }
    if (c == '"' || c == '\'') return string_literal(c);
    if (is_digit(c) || ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
                        is_digit(text_[pos_ + 1]))) {
      return number();
    }
    switch (c) {
      case '.': ++pos_; return {Tok::kDot, start, ".", 0.0};
      case '(': ++pos_; return {Tok::kLParen, start, "(", 0.0};
      case ')': ++pos_; return {Tok::kRParen, start, ")", 0.0};
      case ',': ++pos_; return {Tok::kComma, start, ",", 0.0};
      case '=': ++pos_; return {Tok::kOp, start, "=", 0.0};
      case '!':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          return {Tok::kOp, start, "!=", 0.0};
        }
        break;
      case '<':
      case '>':
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '=') {
          ++pos_;
          return {Tok::kOp, start, std::string(1, c) + "=", 0.0};
        }
        return {Tok::kOp, start, std::string(1, c), 0.0};
      default:
        break;
    }
    throw ParseError(start, "unexpected character");
  }

  Token string_literal(char quote) {
    const std::size_t start = pos_++;
    std::string value;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == quote) {
        ++pos_;
        return {Tok::kString, start, std::move(value), 0.0};
      }
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) break;
        char e = text_[pos_ + 1];
        if (e != '\\' && e != '"' && e != '\'') {
          throw ParseError(pos_, "invalid escape sequence");
        }
        value.push_back(e);
        pos_ += 2;
        continue;
      }
      value.push_back(c);
      ++pos_;
    }
    throw ParseError(start, "unterminated string");
  }

  Token number() {
    const std::size_t start = pos_;
    if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    std::string_view literal = text_.substr(start, pos_ - start);
    std::string_view digits = literal.front() == '+' ? literal.substr(1) : literal;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                     value, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ParseError(start, "number out of range");
    }
    return {Tok::kNumber, start, std::string(literal), value};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// --- namespaces and attributes -------------------------------------------------

std::optional<Namespace> namespace_from(std::string_view word) {
  if (word == "params" || word == "param") return Namespace::kParams;
  if (word == "metrics" || word == "metric") return Namespace::kMetrics;
  if (word == "tags" || word == "tag") return Namespace::kTags;
  if (word == "attributes" || word == "attribute") return Namespace::kAttributes;
  return std::nullopt;
}

enum class AttrKind { kString, kNumeric };

std::optional<AttrKind> attribute_kind(std::string_view key) {
  if (key == "run_id" || key == "status" || key == "experiment_id") {
    return AttrKind::kString;
  }
  if (key == "start_time" || key == "end_time") return AttrKind::kNumeric;
  return std::nullopt;
}

bool is_plain_ident(std::string_view key) {
  if (key.empty() || !is_ident_start(key.front())) return false;
  return std::all_of(key.begin(), key.end(), is_ident_char);
}

bool is_ordering(Comparator c) {
  return c == Comparator::kLt || c == Comparator::kLe || c == Comparator::kGt ||
         c == Comparator::kGe;
}

// --- parser -------------------------------------------------------------------

struct ParsedKey {
  Namespace ns;
  std::string key;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FilterExpr filter() {
    FilterExpr expr;
    if (peek().kind == Tok::kEnd) return expr;
    expr.clauses.push_back(clause());
    while (peek().kind != Tok::kEnd) {
      const auto& t = peek();
      if (t.kind != Tok::kIdent || !iequals(t.text, "AND")) {
        throw ParseError(t.offset, "expected AND or end of filter");
      }
      advance();
      expr.clauses.push_back(clause());
    }
    return expr;
  }

  OrderKey order_key() {
    auto key = parse_key();
    check_known_attribute(key);
    OrderKey out{key.ns, key.key, false};
    const auto& t = peek();
    if (t.kind == Tok::kIdent && (iequals(t.text, "ASC") || iequals(t.text, "DESC"))) {
      out.descending = iequals(t.text, "DESC");
      advance();
    }
    if (peek().kind != Tok::kEnd) {
      throw ParseError(peek().offset, "expected ASC, DESC or end of order_by");
    }
    return out;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }

  ParsedKey parse_key() {
    const Token& first = peek();
    if (first.kind != Tok::kIdent && first.kind != Tok::kQuotedIdent) {
      throw ParseError(first.offset, "expected key");
    }
    advance();
    if (peek().kind != Tok::kDot) {
      return {Namespace::kAttributes, first.text, first.offset};
    }
    auto ns = first.kind == Tok::kIdent ? namespace_from(first.text) : std::nullopt;
    if (!ns) {
      throw ParseError(first.offset,
                       "unknown namespace (expected params, metrics, tags or attributes)");
    }
    advance();  // '.'
    const Token& second = peek();
    if (second.kind != Tok::kIdent && second.kind != Tok::kQuotedIdent) {
      throw ParseError(second.offset, "expected key after namespace");
    }
    advance();
    return {*ns, second.text, first.offset};
  }

  void check_known_attribute(const ParsedKey& key) const {
    if (key.ns == Namespace::kAttributes && !attribute_kind(key.key)) {
      throw ParseError(key.offset, "unknown attribute \"" + key.key + "\"");
    }
  }

  Clause clause() {
    auto key = parse_key();

    const Token& op = peek();
    std::optional<Comparator> cmp;
    if (op.kind == Tok::kOp) {
      if (op.text == "=") cmp = Comparator::kEq;
      else if (op.text == "!=") cmp = Comparator::kNe;
      else if (op.text == "<") cmp = Comparator::kLt;
      else if (op.text == "<=") cmp = Comparator::kLe;
      else if (op.text == ">") cmp = Comparator::kGt;
      else if (op.text == ">=") cmp = Comparator::kGe;
    } else if (op.kind == Tok::kIdent) {
      if (iequals(op.text, "LIKE")) cmp = Comparator::kLike;
      else if (iequals(op.text, "ILIKE")) cmp = Comparator::kILike;
      else if (iequals(op.text, "IN")) cmp = Comparator::kIn;
    }
    if (!cmp) throw ParseError(op.offset, "expected comparator");
    const std::size_t cmp_offset = op.offset;
    advance();

    const Token& value = peek();
    const std::size_t value_offset = value.offset;
    Operand operand;
    if (value.kind == Tok::kString) {
      operand = value.text;
      advance();
    } else if (value.kind == Tok::kNumber) {
      operand = value.number;
      advance();
    } else if (value.kind == Tok::kLParen) {
      advance();
      StringList items;
      for (;;) {
        const Token& item = peek();
        if (item.kind != Tok::kString) throw ParseError(item.offset, "expected string");
        items.push_back(item.text);
        advance();
        if (peek().kind == Tok::kComma) {
          advance();
          continue;
        }
        if (peek().kind == Tok::kRParen) {
          advance();
          break;
        }
        throw ParseError(peek().offset, "expected , or )");
      }
      operand = std::move(items);
    } else {
      throw ParseError(value_offset, "expected value");
    }

    check_known_attribute(key);
    check_types(key, *cmp, cmp_offset, operand, value_offset);
    return Clause{key.ns, std::move(key.key), *cmp, std::move(operand)};
  }

  static void check_types(const ParsedKey& key, Comparator cmp, std::size_t cmp_offset,
                          const Operand& operand, std::size_t value_offset) {
    const bool is_list = std::holds_alternative<StringList>(operand);
    const bool is_number = std::holds_alternative<double>(operand);
    const bool numeric_key =
        key.ns == Namespace::kMetrics ||
        (key.ns == Namespace::kAttributes &&
         attribute_kind(key.key) == AttrKind::kNumeric);

    if (cmp == Comparator::kIn) {
      if (key.ns != Namespace::kAttributes || key.key != "run_id") {
        throw ParseError(cmp_offset, "IN is only supported for attributes.run_id");
      }
      if (!is_list) throw ParseError(value_offset, "IN expects a parenthesized string list");
      return;
    }
    if (is_list) throw ParseError(value_offset, "a value list requires IN");

    if (numeric_key) {
      if (cmp == Comparator::kLike || cmp == Comparator::kILike) {
        throw ParseError(cmp_offset, "LIKE/ILIKE need a string-valued key");
      }
      if (!is_number) throw ParseError(value_offset, "expected numeric value");
      return;
    }
    if (is_ordering(cmp)) {
      throw ParseError(cmp_offset, "ordering comparators need a numeric key");
    }
    if (is_number) throw ParseError(value_offset, "expected string value");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  if (auto bad = first_invalid_utf8(text)) throw ParseError(*bad, "invalid UTF-8");
  return Lexer(text).run();
}

// --- printing -------------------------------------------------------------------

std::string print_key(Namespace ns, const std::string& key) {
  std::string out(to_string(ns));
  out.push_back('.');
  if (is_plain_ident(key)) {
    out += key;
  } else {
    out += '`' + key + '`';
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string print_number(double v) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc{}) fail(ErrorCode::kInternal, "cannot format number");
  return std::string(buf, ptr);
}

// --- evaluation ----------------------------------------------------------------

using SortValue = std::variant<double, std::string>;

std::optional<SortValue> lookup(const Run& run, Namespace ns, const std::string& key) {
  switch (ns) {
    case Namespace::kParams: {
      auto it = run.params.find(key);
      if (it == run.params.end()) return std::nullopt;
      return it->second;
    }
    case Namespace::kTags: {
      auto it = run.tags.find(key);
      if (it == run.tags.end()) return std::nullopt;
      return it->second;
    }
    case Namespace::kMetrics: {
      auto it = run.metrics.find(key);
      if (it == run.metrics.end()) return std::nullopt;
      const auto* latest = latest_point(it->second);
      if (!latest) return std::nullopt;
      return latest->value;
    }
    case Namespace::kAttributes:
      if (key == "run_id") return run.run_id;
      if (key == "experiment_id") return run.experiment_id;
      if (key == "status") return std::string(to_string(run.status));
      if (key == "start_time") return static_cast<double>(run.start_time);
      if (key == "end_time" && run.end_time) return static_cast<double>(*run.end_time);
      return std::nullopt;
  }
  return std::nullopt;
}

template <typename T>
bool compare(const T& lhs, Comparator cmp, const T& rhs) {
  switch (cmp) {
    case Comparator::kEq: return lhs == rhs;
    case Comparator::kNe: return lhs != rhs;
    case Comparator::kLt: return lhs < rhs;
    case Comparator::kLe: return lhs <= rhs;
    case Comparator::kGt: return lhs > rhs;
    case Comparator::kGe: return lhs >= rhs;
    default: return false;
  }
}

bool eval_clause(const Clause& clause, const Run& run) {
  auto actual = lookup(run, clause.ns, clause.key);
  if (!actual) return false;

  if (const auto* list = std::get_if<StringList>(&clause.operand)) {
    const auto* text = std::get_if<std::string>(&*actual);
    return text && std::find(list->begin(), list->end(), *text) != list->end();
  }
  if (const auto* number = std::get_if<double>(&clause.operand)) {
    const auto* value = std::get_if<double>(&*actual);
    return value && compare(*value, clause.comparator, *number);
  }
  const auto& pattern = std::get<std::string>(clause.operand);
  const auto* text = std::get_if<std::string>(&*actual);
  if (!text) return false;
  switch (clause.comparator) {
    case Comparator::kLike: return like_match(*text, pattern, false);
    case Comparator::kILike: return like_match(*text, pattern, true);
    case Comparator::kEq: return *text == pattern;
    case Comparator::kNe: return *text != pattern;
    default: return false;
  }
}

}  // namespace

std::string_view to_string(Namespace ns) {
  switch (ns) {
    case Namespace::kParams: return "params";
    case Namespace::kMetrics: return "metrics";
    case Namespace::kTags: return "tags";
    case Namespace::kAttributes: return "attributes";
  }
  return "attributes";
}

std::string_view to_string(Comparator cmp) {
  switch (cmp) {
    case Comparator::kEq: return "=";
    case Comparator::kNe: return "!=";
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kGt: return ">";
    case Comparator::kGe: return ">=";
    case Comparator::kLike: return "LIKE";
    case Comparator::kILike: return "ILIKE";
    case Comparator::kIn: return "IN";
  }
  return "=";
}

FilterExpr parse_filter(std::string_view text) {
  return Parser(tokenize(text)).filter();
}

std::string print_filter(const FilterExpr& expr) {
  std::string out;
  for (const auto& clause : expr.clauses) {
    if (!out.empty()) out += " AND ";
    out += print_key(clause.ns, clause.key);
    out += ' ';
    out += to_string(clause.comparator);
    out += ' ';
    if (const auto* s = std::get_if<std::string>(&clause.operand)) {
      out += quote(*s);
    } else if (const auto* d = std::get_if<double>(&clause.operand)) {
      out += print_number(*d);
    } else {
      const auto& list = std::get<StringList>(clause.operand);
      out += '(';
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += quote(list[i]);
      }
      out += ')';
    }
  }
  return out;
}

bool eval_filter(const FilterExpr& expr, const Run& run) {
  return std::all_of(expr.clauses.begin(), expr.clauses.end(),
                     [&](const Clause& c) { return eval_clause(c, run); });
}

bool like_match(std::string_view text, std::string_view pattern, bool case_insensitive) {
  auto eq = [case_insensitive](char a, char b) {
    return case_insensitive ? ascii_lower(a) == ascii_lower(b) : a == b;
  };
  std::size_t t = 0, p = 0;
  std::size_t star = std::string_view::npos, resume = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '%') {
      star = p++;
      resume = t;
    } else if (p < pattern.size() && eq(pattern[p], text[t])) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

OrderKey parse_order_key(std::string_view text) {
  return Parser(tokenize(text)).order_key();
}

std::string print_order_key(const OrderKey& key) {
  return print_key(key.ns, key.key) + (key.descending ? " DESC" : " ASC");
}

OrderBySpec parse_order_by(const std::vector<std::string>& elements) {
  OrderBySpec spec;
  for (const auto& e : elements) spec.keys.push_back(parse_order_key(e));
  return spec;
}

const OrderBySpec& default_order() {
  static const OrderBySpec spec{{OrderKey{Namespace::kAttributes, "start_time", true}}};
  return spec;
}

bool run_less(const OrderBySpec& spec, const Run& a, const Run& b) {
  const auto& keys = spec.keys.empty() ? default_order().keys : spec.keys;
  for (const auto& k : keys) {
    auto va = lookup(a, k.ns, k.key);
    auto vb = lookup(b, k.ns, k.key);
    if (!va && !vb) continue;
    if (!va) return false;
    if (!vb) return true;
    // A given key always yields the same alternative.
    if (va->index() != vb->index()) return va->index() < vb->index();
    if (*va == *vb) continue;
    return k.descending ? *vb < *va : *va < *vb;
  }
  return a.run_id < b.run_id;
}

}  // namespace qtrack::query
