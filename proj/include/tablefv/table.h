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

#ifndef TABLEFV_TABLE_H_
#define TABLEFV_TABLE_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tablefv {

// Lowercase (ASCII), trim, and collapse internal whitespace runs to a single
// space. Applied once to every cell and column name at ingestion.
std::string normalize_text(std::string_view raw);

// Parses a whole token as a number: optional sign, digits with optional
// thousands separators, optional decimal part. No trailing characters.
std::optional<double> parse_number(std::string_view token);

// Canonical shortest decimal form of a double ("3", "3.4", "-0.5").
std::string format_number(double value);

// Typed content of a cell. Exactly one alternative is set.
class CellValue {
 public:
  static CellValue number(double v) { return CellValue(v); }
  static CellValue text(std::string v) { return CellValue(std::move(v)); }

  bool is_number() const { return std::holds_alternative<double>(value_); }
  bool is_text() const { return !is_number(); }
  double as_number() const { return std::get<double>(value_); }
  const std::string& as_text() const { return std::get<std::string>(value_); }

  bool operator==(const CellValue&) const = default;

 private:
  explicit CellValue(double v) : value_(v) {}
  explicit CellValue(std::string v) : value_(std::move(v)) {}

  std::variant<double, std::string> value_;
};

// Cell type inference. Number when the normalized string starts with a
// numeric token that is either the whole string, followed by '%', or
// followed by whitespace and a non-date suffix (the suffix is stripped).
// Everything else is Text in normalized form.
CellValue infer_cell(std::string_view raw);

struct Cell {
  std::string raw;
  std::string text;  // normalize_text(raw)
  CellValue parsed;

  bool is_number() const { return parsed.is_number(); }
  bool operator==(const Cell&) const = default;
};

Cell make_cell(std::string raw);

struct ColumnMeta {
  std::string raw_name;
  std::string name;  // normalized, unique within a table

  bool operator==(const ColumnMeta&) const = default;
};

enum class TableErrorKind {
  kEmptyTable,
  kRaggedRow,
  kDuplicateColumn,
  kOversizedTable,
  kIndexOutOfBounds,
};

class TableError : public std::runtime_error {
 public:
  TableError(TableErrorKind kind, std::string message, std::size_t line = 0)
      : std::runtime_error(std::move(message)), kind_(kind), line_(line) {}

  TableErrorKind kind() const { return kind_; }
  // 1-based input line for kRaggedRow, 0 otherwise.
  std::size_t line() const { return line_; }

 private:
  TableErrorKind kind_;
  std::size_t line_;
};

// Immutable grid of typed cells with a caption and named columns.
class Table {
 public:
  // Validates shape and column-name uniqueness; throws TableError.
  Table(std::string table_id, std::string caption,
        std::vector<ColumnMeta> columns, std::vector<std::vector<Cell>> rows);

  const std::string& table_id() const { return table_id_; }
  const std::string& caption() const { return caption_; }
  const std::vector<ColumnMeta>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return columns_.size(); }
  const Cell& cell(std::size_t row, std::size_t col) const {
    return rows_[row][col];
  }

  // Index of the column whose normalized name equals normalize_text(name).
  std::optional<std::size_t> find_column(std::string_view name) const;

  // True when at least one cell in the column parsed as a number.
  bool column_has_numbers(std::size_t col) const {
    return numeric_columns_[col];
  }

  bool operator==(const Table&) const = default;

 private:
  std::string table_id_;
  std::string caption_;
  std::vector<ColumnMeta> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<bool> numeric_columns_;
};

struct ParseOptions {
  char delimiter = '#';
  std::string table_id;
  std::string caption;
  // Rejects tables outside 50 rows x 10 columns.
  bool strict_dims = false;
};

inline constexpr std::size_t kMaxStrictRows = 50;
inline constexpr std::size_t kMaxStrictCols = 10;

// Parses delimiter-separated text whose first line holds the column names.
// Throws TableError (kEmptyTable, kRaggedRow, kDuplicateColumn,
// kOversizedTable).
Table parse_table(std::string_view text, const ParseOptions& options = {});

// Reads and parses a table file. The table id defaults to the file name.
Table load_table_file(const std::string& path, ParseOptions options = {});

// Writes raw header and cells back in the input layout.
std::string serialize_table(const Table& table, char delimiter = '#');

// A sub-table: ordered row and column index subsets of a source table. Never
// copies cell data. Equality is by source identity and index sets.
class View {
 public:
  View() = default;
  // Full view over every row and column.
  explicit View(const Table& table);
  // Indices are sorted and deduplicated; throws kIndexOutOfBounds.
  View(const Table& table, std::vector<int> rows, std::vector<int> cols);

  const Table& table() const { return *table_; }
  const Table* source() const { return table_; }
  const std::vector<int>& rows() const { return rows_; }
  const std::vector<int>& cols() const { return cols_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_.size(); }
  bool empty() const { return rows_.empty(); }

  // Cell at view-relative position.
  const Cell& at(std::size_t row, std::size_t col) const {
    return table_->cell(static_cast<std::size_t>(rows_[row]),
                        static_cast<std::size_t>(cols_[col]));
  }

  // Same columns, rows replaced by source-row indices (kept in source order).
  View with_rows(std::vector<int> source_rows) const;

  bool operator==(const View& other) const {
    return table_ == other.table_ && rows_ == other.rows_ &&
           cols_ == other.cols_;
  }

 private:
  const Table* table_ = nullptr;
  std::vector<int> rows_;
  std::vector<int> cols_;
};

// Projects onto view-relative row and column positions. Positions are
// deduplicated and kept in source order. Throws kIndexOutOfBounds.
View project(const View& view, const std::vector<int>& rows,
             const std::vector<int>& cols);

// All positions [0, n).
std::vector<int> all_positions(std::size_t n);

}  // namespace tablefv

#endif  // TABLEFV_TABLE_H_
