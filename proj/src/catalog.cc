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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tablefv/dsl.h"

namespace tablefv {

namespace {

using Args = std::span<const Argument>;

const View& view_at(Args args, std::size_t i) {
  return std::get<TypedValue>(args[i]).as_view();
}
std::size_t col_at(Args args, std::size_t i) {
  return std::get<ColumnArg>(args[i]).index;
}
const TypedValue& value_at(Args args, std::size_t i) {
  return std::get<TypedValue>(args[i]);
}
double num_at(Args args, std::size_t i) { return value_at(args, i).as_num(); }
const std::string& str_at(Args args, std::size_t i) {
  return value_at(args, i).as_str();
}
bool bool_at(Args args, std::size_t i) { return value_at(args, i).as_bool(); }

const Cell& cell_of(const Table& table, int row, std::size_t col) {
  return table.cell(static_cast<std::size_t>(row), col);
}

ExecError non_numeric(const Table& table, std::size_t col) {
  return {ExecErrorKind::kNonNumericColumn, table.columns()[col].name};
}

ExecError empty_view(std::string_view fn) {
  return {ExecErrorKind::kEmptyViewAggregate, std::string(fn)};
}

// Cell matches a Num or Str value.
bool cell_equals(const Cell& cell, const TypedValue& v) {
  if (v.is_num()) return cell.is_number() && num_equal(cell.parsed.as_number(), v.as_num());
  return cell.text == v.as_str();
}

enum class Cmp { kGreater, kLess, kGe, kLe };

bool compare(double a, double b, Cmp op) {
  bool eq = num_equal(a, b);
  switch (op) {
    case Cmp::kGreater:
      return a > b && !eq;
    case Cmp::kLess:
      return a < b && !eq;
    case Cmp::kGe:
      return a > b || eq;
    case Cmp::kLe:
      return a < b || eq;
  }
  return false;
}

// Numeric cells of `col` within the view, as (source row, value) in view
// order.
std::vector<std::pair<int, double>> numeric_cells(const View& view,
                                                  std::size_t col) {
  std::vector<std::pair<int, double>> out;
  const Table& table = view.table();
  for (int r : view.rows()) {
    const Cell& cell = cell_of(table, r, col);
    if (cell.is_number()) out.emplace_back(r, cell.parsed.as_number());
  }
  return out;
}

// Filters.

EvalResult filter_eq(const Table&, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  std::vector<int> keep;
  for (int r : view.rows()) {
    if (cell_equals(cell_of(view.table(), r, col), value_at(args, 2))) {
      keep.push_back(r);
    }
  }
  return TypedValue::view(view.with_rows(std::move(keep)));
}

EvalResult filter_not_eq(const Table&, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  std::vector<int> keep;
  for (int r : view.rows()) {
    if (!cell_equals(cell_of(view.table(), r, col), value_at(args, 2))) {
      keep.push_back(r);
    }
  }
  return TypedValue::view(view.with_rows(std::move(keep)));
}

template <Cmp op>
EvalResult filter_cmp(const Table& table, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  if (!table.column_has_numbers(col)) return non_numeric(table, col);
  double bound = num_at(args, 2);
  std::vector<int> keep;
  for (int r : view.rows()) {
    const Cell& cell = cell_of(table, r, col);
    if (cell.is_number() && compare(cell.parsed.as_number(), bound, op)) {
      keep.push_back(r);
    }
  }
  return TypedValue::view(view.with_rows(std::move(keep)));
}

EvalResult filter_str_contains(const Table&, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  const std::string& needle = str_at(args, 2);
  std::vector<int> keep;
  for (int r : view.rows()) {
    if (cell_of(view.table(), r, col).text.find(needle) != std::string::npos) {
      keep.push_back(r);
    }
  }
  return TypedValue::view(view.with_rows(std::move(keep)));
}

// Aggregates.

EvalResult count(const Table&, Args args) {
  return TypedValue::num(static_cast<double>(view_at(args, 0).row_count()));
}

EvalResult sum(const Table& table, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  auto cells = numeric_cells(view, col);
  if (!view.empty() && cells.empty()) return non_numeric(table, col);
  double total = 0.0;
  for (const auto& [row, v] : cells) total += v;
  return TypedValue::num(total);
}

// Shared entry checks for avg/max/min/argmax/argmin.
std::optional<ExecError> check_numeric_view(
    const Table& table, const View& view, std::size_t col,
    std::string_view fn, const std::vector<std::pair<int, double>>& cells) {
  if (view.empty()) return empty_view(fn);
  if (cells.empty()) return non_numeric(table, col);
  return std::nullopt;
}

EvalResult avg(const Table& table, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  auto cells = numeric_cells(view, col);
  if (auto err = check_numeric_view(table, view, col, "avg", cells)) return *err;
  double total = 0.0;
  for (const auto& [row, v] : cells) total += v;
  return TypedValue::num(total / static_cast<double>(cells.size()));
}

// Index into `cells` of the first maximum (or minimum).
std::size_t extreme_index(const std::vector<std::pair<int, double>>& cells,
                          bool largest) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (largest ? cells[i].second > cells[best].second
                : cells[i].second < cells[best].second) {
      best = i;
    }
  }
  return best;
}

template <bool kLargest>
EvalResult extreme_value(const Table& table, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  auto cells = numeric_cells(view, col);
  if (auto err = check_numeric_view(table, view, col, kLargest ? "max" : "min",
                                    cells)) {
    return *err;
  }
  return TypedValue::num(cells[extreme_index(cells, kLargest)].second);
}

EvalResult count_distinct(const Table&, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  std::set<std::string> seen;
  for (int r : view.rows()) seen.insert(cell_of(view.table(), r, col).text);
  return TypedValue::num(static_cast<double>(seen.size()));
}

// Superlatives.

template <bool kLargest>
EvalResult arg_extreme(const Table& table, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  auto cells = numeric_cells(view, col);
  if (auto err = check_numeric_view(table, view, col,
                                    kLargest ? "argmax" : "argmin", cells)) {
    return *err;
  }
  return TypedValue::view(view.with_rows({cells[extreme_index(cells, kLargest)].first}));
}

// The n-th ranked numeric cell (1-based), ties kept in view order.
template <bool kLargest>
std::variant<std::pair<int, double>, ExecError> nth_ranked(const Table& table,
                                                           Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  auto cells = numeric_cells(view, col);
  if (auto err = check_numeric_view(table, view, col, "nth", cells)) {
    return *err;
  }
  double n = num_at(args, 2);
  double rounded = std::round(n);
  if (!num_equal(n, rounded) || rounded < 1 ||
      rounded > static_cast<double>(cells.size())) {
    return ExecError{ExecErrorKind::kIndexOutOfRange, format_number(n)};
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const auto& a, const auto& b) {
                     return kLargest ? a.second > b.second : a.second < b.second;
                   });
  return cells[static_cast<std::size_t>(rounded) - 1];
}

template <bool kLargest>
EvalResult nth_arg(const Table& table, Args args) {
  auto ranked = nth_ranked<kLargest>(table, args);
  if (auto* err = std::get_if<ExecError>(&ranked)) return *err;
  int row = std::get<std::pair<int, double>>(ranked).first;
  return TypedValue::view(view_at(args, 0).with_rows({row}));
}

template <bool kLargest>
EvalResult nth_value(const Table& table, Args args) {
  auto ranked = nth_ranked<kLargest>(table, args);
  if (auto* err = std::get_if<ExecError>(&ranked)) return *err;
  return TypedValue::num(std::get<std::pair<int, double>>(ranked).second);
}

// Row access.

EvalResult hop(const Table&, Args args) {
  const View& view = view_at(args, 0);
  if (view.empty()) return empty_view("hop");
  if (view.row_count() > 1) {
    return ExecError{ExecErrorKind::kMultiRowHop,
                     std::to_string(view.row_count()) + " rows"};
  }
  const Cell& cell = cell_of(view.table(), view.rows()[0], col_at(args, 1));
  if (cell.is_number()) return TypedValue::num(cell.parsed.as_number());
  return TypedValue::str(cell.text);
}

template <bool kFirst>
EvalResult edge_row(const Table&, Args args) {
  const View& view = view_at(args, 0);
  if (view.empty()) return empty_view(kFirst ? "first_row" : "last_row");
  return TypedValue::view(
      view.with_rows({kFirst ? view.rows().front() : view.rows().back()}));
}

// Scalars.

EvalResult eq(const Table&, Args args) {
  return TypedValue::boolean(num_equal(num_at(args, 0), num_at(args, 1)));
}
EvalResult not_eq_fn(const Table&, Args args) {
  return TypedValue::boolean(!num_equal(num_at(args, 0), num_at(args, 1)));
}
template <Cmp op>
EvalResult num_cmp(const Table&, Args args) {
  return TypedValue::boolean(compare(num_at(args, 0), num_at(args, 1), op));
}
EvalResult diff(const Table&, Args args) {
  return TypedValue::num(num_at(args, 0) - num_at(args, 1));
}
EvalResult add(const Table&, Args args) {
  return TypedValue::num(num_at(args, 0) + num_at(args, 1));
}
EvalResult str_eq(const Table&, Args args) {
  return TypedValue::boolean(str_at(args, 0) == str_at(args, 1));
}
EvalResult not_str_eq(const Table&, Args args) {
  return TypedValue::boolean(str_at(args, 0) != str_at(args, 1));
}
EvalResult and_fn(const Table&, Args args) {
  return TypedValue::boolean(bool_at(args, 0) && bool_at(args, 1));
}
EvalResult or_fn(const Table&, Args args) {
  return TypedValue::boolean(bool_at(args, 0) || bool_at(args, 1));
}
EvalResult not_fn(const Table&, Args args) {
  return TypedValue::boolean(!bool_at(args, 0));
}

// Quantifiers. An empty view is vacuously true.

EvalResult all_eq(const Table&, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  bool all = std::all_of(view.rows().begin(), view.rows().end(), [&](int r) {
    return cell_equals(cell_of(view.table(), r, col), value_at(args, 2));
  });
  return TypedValue::boolean(all);
}

EvalResult all_not_eq(const Table&, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  bool none = std::none_of(view.rows().begin(), view.rows().end(), [&](int r) {
    return cell_equals(cell_of(view.table(), r, col), value_at(args, 2));
  });
  return TypedValue::boolean(none);
}

template <Cmp op>
EvalResult all_cmp(const Table& table, Args args) {
  const View& view = view_at(args, 0);
  std::size_t col = col_at(args, 1);
  if (!table.column_has_numbers(col)) return non_numeric(table, col);
  double bound = num_at(args, 2);
  bool all = std::all_of(view.rows().begin(), view.rows().end(), [&](int r) {
    const Cell& cell = cell_of(table, r, col);
    return cell.is_number() && compare(cell.parsed.as_number(), bound, op);
  });
  return TypedValue::boolean(all);
}

EvalResult only(const Table&, Args args) {
  return TypedValue::boolean(view_at(args, 0).row_count() == 1);
}
EvalResult is_not_empty(const Table&, Args args) {
  return TypedValue::boolean(!view_at(args, 0).empty());
}

std::vector<FunctionDef> build_catalog() {
  using F = FunctionFamily;
  constexpr TypeTag V = TypeTag::kView, C = TypeTag::kCol, N = TypeTag::kNum,
                    S = TypeTag::kStr, B = TypeTag::kBool, X = TypeTag::kVal;
  return {
      {"filter_eq", F::kFilter, {V, C, X}, V, filter_eq},
      {"filter_not_eq", F::kFilter, {V, C, X}, V, filter_not_eq},
      {"filter_greater", F::kFilter, {V, C, N}, V, filter_cmp<Cmp::kGreater>},
      {"filter_less", F::kFilter, {V, C, N}, V, filter_cmp<Cmp::kLess>},
      {"filter_ge", F::kFilter, {V, C, N}, V, filter_cmp<Cmp::kGe>},
      {"filter_le", F::kFilter, {V, C, N}, V, filter_cmp<Cmp::kLe>},
      {"filter_str_contains", F::kFilter, {V, C, S}, V, filter_str_contains},
      {"count", F::kAggregate, {V}, N, count},
      {"sum", F::kAggregate, {V, C}, N, sum},
      {"avg", F::kAggregate, {V, C}, N, avg},
      {"max", F::kAggregate, {V, C}, N, extreme_value<true>},
      {"min", F::kAggregate, {V, C}, N, extreme_value<false>},
      {"count_distinct", F::kAggregate, {V, C}, N, count_distinct},
      {"argmax", F::kSuperlative, {V, C}, V, arg_extreme<true>},
      {"argmin", F::kSuperlative, {V, C}, V, arg_extreme<false>},
      {"nth_argmax", F::kSuperlative, {V, C, N}, V, nth_arg<true>},
      {"nth_argmin", F::kSuperlative, {V, C, N}, V, nth_arg<false>},
      {"nth_max", F::kSuperlative, {V, C, N}, N, nth_value<true>},
      {"nth_min", F::kSuperlative, {V, C, N}, N, nth_value<false>},
      {"hop", F::kRowAccess, {V, C}, X, hop},
      {"first_row", F::kRowAccess, {V}, V, edge_row<true>},
      {"last_row", F::kRowAccess, {V}, V, edge_row<false>},
      {"eq", F::kNumericCompare, {N, N}, B, eq},
      {"not_eq", F::kNumericCompare, {N, N}, B, not_eq_fn},
      {"greater", F::kNumericCompare, {N, N}, B, num_cmp<Cmp::kGreater>},
      {"less", F::kNumericCompare, {N, N}, B, num_cmp<Cmp::kLess>},
      {"ge", F::kNumericCompare, {N, N}, B, num_cmp<Cmp::kGe>},
      {"le", F::kNumericCompare, {N, N}, B, num_cmp<Cmp::kLe>},
      {"diff", F::kArithmetic, {N, N}, N, diff},
      {"add", F::kArithmetic, {N, N}, N, add},
      {"str_eq", F::kStringCompare, {S, S}, B, str_eq},
      {"not_str_eq", F::kStringCompare, {S, S}, B, not_str_eq},
      {"and", F::kLogical, {B, B}, B, and_fn},
      {"or", F::kLogical, {B, B}, B, or_fn},
      {"not", F::kLogical, {B}, B, not_fn},
      {"all_eq", F::kQuantifier, {V, C, X}, B, all_eq},
      {"all_not_eq", F::kQuantifier, {V, C, X}, B, all_not_eq},
      {"all_greater", F::kQuantifier, {V, C, N}, B, all_cmp<Cmp::kGreater>},
      {"all_less", F::kQuantifier, {V, C, N}, B, all_cmp<Cmp::kLess>},
      {"all_ge", F::kQuantifier, {V, C, N}, B, all_cmp<Cmp::kGe>},
      {"all_le", F::kQuantifier, {V, C, N}, B, all_cmp<Cmp::kLe>},
      {"only", F::kCardinality, {V}, B, only},
      {"is_not_empty", F::kCardinality, {V}, B, is_not_empty},
  };
}

}  // namespace

const std::vector<FunctionDef>& catalog() {
  static const std::vector<FunctionDef> kCatalog = build_catalog();
  return kCatalog;
}

const FunctionDef* find_function(std::string_view name) {
  for (const auto& fn : catalog()) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

}  // namespace tablefv
