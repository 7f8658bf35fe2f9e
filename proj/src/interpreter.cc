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

#include <cmath>
#include <string>

#include "tablefv/dsl.h"

namespace tablefv {

namespace {

ExecError mismatch(const FunctionDef& fn, std::size_t i, std::string_view got) {
  return {ExecErrorKind::kTypeMismatch,
          fn.name + " arg " + std::to_string(i) + ": expected " +
              std::string(type_name(fn.arg_types[i])) + ", got " +
              std::string(got)};
}

}  // namespace

EvalResult apply(const FunctionDef& fn, const Table& table,
                 std::span<const Argument> args) {
  if (args.size() != fn.arity()) {
    return ExecError{ExecErrorKind::kTypeMismatch,
                     fn.name + ": wrong argument count"};
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    TypeTag slot = fn.arg_types[i];
    if (const auto* col = std::get_if<ColumnArg>(&args[i])) {
      if (slot != TypeTag::kCol) return mismatch(fn, i, "Col");
      if (col->index >= table.col_count()) {
        return ExecError{ExecErrorKind::kUnknownColumn,
                         "column index " + std::to_string(col->index)};
      }
      continue;
    }
    const TypedValue& v = std::get<TypedValue>(args[i]);
    bool ok = slot == TypeTag::kVal ? (v.is_num() || v.is_str())
                                    : v.type() == slot;
    if (!ok) return mismatch(fn, i, type_name(v.type()));
    if (v.is_view() && v.as_view().source() != &table) {
      return ExecError{ExecErrorKind::kTypeMismatch,
                       fn.name + ": view over a different table"};
    }
  }
  EvalResult result = fn.semantics(table, args);
  if (result.ok() && result.value().is_num() &&
      !std::isfinite(result.value().as_num())) {
    return ExecError{ExecErrorKind::kDivergentValue, fn.name};
  }
  return result;
}

EvalResult execute(const Expr& expr, const Table& table) {
  switch (expr.kind) {
    case Expr::Kind::kRoot:
      return TypedValue::view(View(table));
    case Expr::Kind::kNum:
      return TypedValue::num(expr.number);
    case Expr::Kind::kStr:
      return TypedValue::str(expr.text);
    case Expr::Kind::kCol:
      return ExecError{ExecErrorKind::kTypeMismatch,
                       "column reference outside an argument slot"};
    case Expr::Kind::kCall:
      break;
  }
  std::vector<Argument> args;
  args.reserve(expr.args.size());
  for (const auto& child : expr.args) {
    if (child->kind == Expr::Kind::kCol) {
      auto index = table.find_column(child->text);
      if (!index) return ExecError{ExecErrorKind::kUnknownColumn, child->text};
      args.emplace_back(ColumnArg{*index});
      continue;
    }
    EvalResult value = execute(*child, table);
    if (!value.ok()) return value;
    args.emplace_back(std::move(value.value()));
  }
  return apply(*expr.fn, table, args);
}

EvalResult execute(const Program& program, const Table& table) {
  return execute(program.root(), table);
}

}  // namespace tablefv
