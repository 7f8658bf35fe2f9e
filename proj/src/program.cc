// Copyright 2026 The tablefv Authors.
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

#include <charconv>
#include <cmath>
#include <string>

#include "tablefv/dsl.h"

namespace tablefv {

ExprPtr Expr::root() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kRoot;
  e->trace = "T";
  return e;
}

ExprPtr Expr::num(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNum;
  e->number = v;
  e->trace = "num:" + format_number(v);
  return e;
}

ExprPtr Expr::str(std::string v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kStr;
  e->trace = "str:" + quote_string(v);
  e->text = std::move(v);
  return e;
}

ExprPtr Expr::col(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kCol;
  e->trace = "col:" + column_token(name);
  e->text = std::move(name);
  return e;
}

ExprPtr Expr::call(const FunctionDef& fn, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kCall;
  e->fn = &fn;
  e->calls = 1;
  std::size_t length = fn.name.size() + 2;
  for (const auto& a : args) length += a->trace.size() + 1;
  e->trace.reserve(length);
  e->trace = fn.name;
  e->trace += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) e->trace += ',';
    e->trace += args[i]->trace;
    e->calls += args[i]->calls;
  }
  e->trace += ')';
  e->args = std::move(args);
  return e;
}

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string column_token(std::string_view name) {
  bool bare = !name.empty() &&
              name.find_first_of(",()\"\\") == std::string_view::npos &&
              name.front() != ' ' && name.back() != ' ';
  return bare ? std::string(name) : quote_string(name);
}

namespace {

class TraceParser {
 public:
  explicit TraceParser(std::string_view input) : in_(input) {}

  Program parse() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ != in_.size()) fail("trailing characters");
    return Program(std::move(e));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw TraceParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < in_.size() && in_[pos_] == ' ') ++pos_;
  }

  bool consume(std::string_view token) {
    if (in_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= in_.size() || in_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string quoted() {
    if (pos_ >= in_.size() || in_[pos_] != '"') fail("expected '\"'");
    ++pos_;
    std::string out;
    while (pos_ < in_.size() && in_[pos_] != '"') {
      if (in_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= in_.size()) break;
      }
      out += in_[pos_++];
    }
    if (pos_ >= in_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  ExprPtr expr() {
    skip_space();
    if (consume("num:")) {
      std::size_t start = pos_;
      while (pos_ < in_.size() && in_[pos_] != ',' && in_[pos_] != ')' &&
             in_[pos_] != ' ') {
        ++pos_;
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(in_.data() + start, in_.data() + pos_, v);
      if (ec != std::errc() || ptr != in_.data() + pos_ || !std::isfinite(v)) {
        pos_ = start;
        fail("bad number");
      }
      return Expr::num(v);
    }
    if (consume("str:")) return Expr::str(quoted());
    if (consume("col:")) {
      if (pos_ < in_.size() && in_[pos_] == '"') {
        return Expr::col(normalize_text(quoted()));
      }
      std::size_t start = pos_;
      while (pos_ < in_.size() && in_[pos_] != ',' && in_[pos_] != ')') ++pos_;
      std::string name = normalize_text(in_.substr(start, pos_ - start));
      if (name.empty()) fail("empty column name");
      return Expr::col(std::move(name));
    }
    std::size_t start = pos_;
    while (pos_ < in_.size() &&
           ((in_[pos_] >= 'a' && in_[pos_] <= 'z') || in_[pos_] == '_' ||
            (in_[pos_] >= 'A' && in_[pos_] <= 'Z'))) {
      ++pos_;
    }
    std::string_view name = in_.substr(start, pos_ - start);
    if (name.empty()) fail("expected expression");
    skip_space();
    if (pos_ >= in_.size() || in_[pos_] != '(') {
      if (name == "T") return Expr::root();
      pos_ = start;
      fail("expected '(' after '" + std::string(name) + "'");
    }
    const FunctionDef* fn = find_function(name);
    if (fn == nullptr) {
      pos_ = start;
      fail("unknown function '" + std::string(name) + "'");
    }
    ++pos_;
    std::vector<ExprPtr> args;
    skip_space();
    if (pos_ < in_.size() && in_[pos_] == ')') {
      ++pos_;
      return Expr::call(*fn, std::move(args));
    }
    for (;;) {
      args.push_back(expr());
      skip_space();
      if (consume(",")) continue;
      expect(')');
      break;
    }
    return Expr::call(*fn, std::move(args));
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

TypeTag leaf_type(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNum:
      return TypeTag::kNum;
    case Expr::Kind::kStr:
      return TypeTag::kStr;
    case Expr::Kind::kCol:
      return TypeTag::kCol;
    case Expr::Kind::kRoot:
      return TypeTag::kView;
    case Expr::Kind::kCall:
      return e.fn->return_type;
  }
  return TypeTag::kView;
}

bool slot_accepts(TypeTag slot, TypeTag actual) {
  if (slot == actual) return true;
  if (slot == TypeTag::kVal) {
    return actual == TypeTag::kNum || actual == TypeTag::kStr;
  }
  return actual == TypeTag::kVal &&
         (slot == TypeTag::kNum || slot == TypeTag::kStr);
}

std::optional<TypeError> check(const Expr& e, std::vector<std::size_t>& path) {
  if (e.kind != Expr::Kind::kCall) return std::nullopt;
  const FunctionDef& fn = *e.fn;
  if (e.args.size() != fn.arity()) {
    return TypeError{path, fn.name + " expects " + std::to_string(fn.arity()) +
                               " arguments, got " +
                               std::to_string(e.args.size())};
  }
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    path.push_back(i);
    TypeTag actual = leaf_type(*e.args[i]);
    if (!slot_accepts(fn.arg_types[i], actual)) {
      return TypeError{path, fn.name + " expects " +
                                 std::string(type_name(fn.arg_types[i])) +
                                 ", got " + std::string(type_name(actual))};
    }
    if (auto err = check(*e.args[i], path)) return err;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

Program parse_program(std::string_view trace) {
  return TraceParser(trace).parse();
}

std::string TypeError::location() const {
  if (path.empty()) return "root";
  std::string out = "arg ";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

std::optional<TypeError> type_check(const Program& program) {
  std::vector<std::size_t> path;
  return check(program.root(), path);
}

}  // namespace tablefv
