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

// Typed table DSL: values, the function catalog, program trees with their
// canonical trace form, and the interpreter.
//
// Trace grammar:
//   expr  := name '(' expr (',' expr)* ')' | 'num:' number | 'str:' quoted
//          | 'col:' (bare | quoted) | 'T'
// Bare column names may not contain ',', '(', ')', '"' or '\'; other names
// are written quoted. Strings escape '"' and '\' with a backslash.

#ifndef TABLEFV_DSL_H_
#define TABLEFV_DSL_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tablefv/table.h"

namespace tablefv {

// Num, Str, Bool and View are value types. Col marks a column-name slot and
// Val a slot that takes either a Num or a Str.
enum class TypeTag { kNum, kStr, kBool, kView, kCol, kVal };

std::string_view type_name(TypeTag tag);

// Relative tolerance for numeric equality, with a floor of 1 on the scale.
inline constexpr double kNumTolerance = 1e-6;
bool num_equal(double a, double b);

class TypedValue {
 public:
  static TypedValue num(double v) { return TypedValue(Payload(v)); }
  static TypedValue str(std::string v) {
    return TypedValue(Payload(std::move(v)));
  }
  static TypedValue boolean(bool v) { return TypedValue(Payload(v)); }
  static TypedValue view(View v) { return TypedValue(Payload(std::move(v))); }

  TypeTag type() const;
  bool is_num() const { return std::holds_alternative<double>(payload_); }
  bool is_str() const { return std::holds_alternative<std::string>(payload_); }
  bool is_bool() const { return std::holds_alternative<bool>(payload_); }
  bool is_view() const { return std::holds_alternative<View>(payload_); }

  double as_num() const { return std::get<double>(payload_); }
  const std::string& as_str() const { return std::get<std::string>(payload_); }
  bool as_bool() const { return std::get<bool>(payload_); }
  const View& as_view() const { return std::get<View>(payload_); }

  // Exact structural equality (bitwise on numbers).
  bool operator==(const TypedValue& other) const {
    return payload_ == other.payload_;
  }

  // Human-readable rendering: 2, "democratic", true, view[rows=0,3].
  std::string to_string() const;

 private:
  using Payload = std::variant<double, std::string, bool, View>;
  explicit TypedValue(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

enum class ExecErrorKind {
  kEmptyViewAggregate,
  kNonNumericColumn,
  kDivergentValue,
  kMultiRowHop,
  kIndexOutOfRange,
  kUnknownColumn,
  kTypeMismatch,
};

std::string_view exec_error_name(ExecErrorKind kind);

struct ExecError {
  ExecErrorKind kind;
  std::string detail;
};

// Outcome of evaluating one program or one function application.
class EvalResult {
 public:
  EvalResult(TypedValue value) : outcome_(std::move(value)) {}  // NOLINT
  EvalResult(ExecError error) : outcome_(std::move(error)) {}   // NOLINT

  bool ok() const { return std::holds_alternative<TypedValue>(outcome_); }
  const TypedValue& value() const { return std::get<TypedValue>(outcome_); }
  TypedValue& value() { return std::get<TypedValue>(outcome_); }
  const ExecError& error() const { return std::get<ExecError>(outcome_); }

 private:
  std::variant<TypedValue, ExecError> outcome_;
};

// Argument of a function application: a value or a column index.
struct ColumnArg {
  std::size_t index;
};
using Argument = std::variant<TypedValue, ColumnArg>;

using Semantics = EvalResult (*)(const Table&, std::span<const Argument>);

enum class FunctionFamily {
  kFilter,
  kAggregate,
  kSuperlative,
  kRowAccess,
  kNumericCompare,
  kArithmetic,
  kStringCompare,
  kLogical,
  kQuantifier,
  kCardinality,
};

struct FunctionDef {
  std::string name;
  FunctionFamily family;
  std::vector<TypeTag> arg_types;
  // kVal only for hop, whose result type follows the selected cell.
  TypeTag return_type;
  Semantics semantics;

  std::size_t arity() const { return arg_types.size(); }
};

inline constexpr int kCatalogVersion = 1;

// Stable, immutable catalog. Names are unique.
const std::vector<FunctionDef>& catalog();
const FunctionDef* find_function(std::string_view name);

// Program trees.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { kCall, kNum, kStr, kCol, kRoot };

  Kind kind = Kind::kRoot;
  const FunctionDef* fn = nullptr;  // kCall
  std::vector<ExprPtr> args;        // kCall
  double number = 0.0;              // kNum
  std::string text;                 // kStr value or kCol normalized name
  std::string trace;                // canonical serialization
  int calls = 0;                    // function applications in the subtree

  static ExprPtr root();
  static ExprPtr num(double v);
  static ExprPtr str(std::string v);
  static ExprPtr col(std::string name);
  static ExprPtr call(const FunctionDef& fn, std::vector<ExprPtr> args);
};

class Program {
 public:
  Program() = default;
  explicit Program(ExprPtr root) : root_(std::move(root)) {}

  const Expr& root() const { return *root_; }
  const ExprPtr& root_ptr() const { return root_; }
  const std::string& trace() const { return root_->trace; }
  // Number of function applications.
  int size() const { return root_->calls; }

  bool operator==(const Program& other) const {
    return trace() == other.trace();
  }

 private:
  ExprPtr root_;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Throws TraceParseError on malformed input or unknown function names.
Program parse_program(std::string_view trace);

std::string quote_string(std::string_view s);
std::string column_token(std::string_view name);

struct TypeError {
  std::vector<std::size_t> path;  // argument positions from the root
  std::string message;

  // "arg 0", "arg 1.0"; "root" for an empty path.
  std::string location() const;
};

// nullopt when every call node satisfies its signature. A kVal result is
// accepted in Num and Str slots and checked again at execution.
std::optional<TypeError> type_check(const Program& program);

// Applies one catalog function to evaluated arguments.
EvalResult apply(const FunctionDef& fn, const Table& table,
                 std::span<const Argument> args);

// Bottom-up evaluation. Pure; the table is never modified.
EvalResult execute(const Program& program, const Table& table);
EvalResult execute(const Expr& expr, const Table& table);

}  // namespace tablefv

#endif  // TABLEFV_DSL_H_
