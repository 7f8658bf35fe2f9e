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

#include "tablefv/table.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tablefv {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr std::array<std::string_view, 22> kMonths = {
    "january", "february", "march",   "april", "may",  "june",
    "july",    "august",   "september", "october", "november", "december",
    "jan",     "feb",      "mar",     "apr",   "jun",  "jul",
    "aug",     "sep",      "oct",     "nov"};

bool is_month(std::string_view word) {
  if (word == "sept" || word == "dec") return true;
  return std::find(kMonths.begin(), kMonths.end(), word) != kMonths.end();
}

// Scans the longest numeric prefix of `s` under the cell grammar. Returns
// the number of characters consumed (0 if no number) and the digits with
// separators removed in `clean`.
std::size_t scan_number(std::string_view s, std::string& clean) {
  clean.clear();
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') clean.push_back('-');
    ++i;
  }
  std::size_t digits_start = i;
  while (i < s.size() && is_digit(s[i])) clean.push_back(s[i++]);
  std::size_t lead = i - digits_start;
  if (lead == 0) return 0;

  // Thousands groups are only valid after a 1-3 digit lead.
  if (lead <= 3) {
    while (i + 3 < s.size() && s[i] == ',' && is_digit(s[i + 1]) &&
           is_digit(s[i + 2]) && is_digit(s[i + 3]) &&
           (i + 4 == s.size() || !is_digit(s[i + 4]))) {
      clean.append(s.substr(i + 1, 3));
      i += 4;
    }
  }
  if (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
    clean.push_back('.');
    ++i;
    while (i < s.size() && is_digit(s[i])) clean.push_back(s[i++]);
  }
  return i;
}

std::optional<double> to_double(const std::string& clean) {
  double value = 0.0;
  const char* begin = clean.data();
  const char* end = clean.data() + clean.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if (value == 0.0) value = 0.0;  // drop negative zero
  return value;
}

std::vector<std::string> split(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<double> parse_number(std::string_view token) {
  std::string clean;
  std::size_t used = scan_number(token, clean);
  if (used == 0 || used != token.size()) return std::nullopt;
  return to_double(clean);
}

CellValue infer_cell(std::string_view raw) {
  std::string text = normalize_text(raw);
  std::string clean;
  std::size_t used = scan_number(text, clean);
  if (used == 0) return CellValue::text(std::move(text));

  std::string_view rest = std::string_view(text).substr(used);
  bool numeric = false;
  if (rest.empty() || rest == "%") {
    numeric = true;
  } else if (rest.front() == ' ') {
    std::string_view suffix = rest.substr(1);
    // Unit or annotation suffix such as "(ot)" or "km"; dates stay text.
    if (!suffix.empty() &&
        (is_alpha(suffix.front()) || suffix.front() == '(' ||
         suffix.front() == '[')) {
      std::size_t end = 0;
      while (end < suffix.size() && is_alpha(suffix[end])) ++end;
      numeric = !is_month(suffix.substr(0, end));
    }
  }
  if (!numeric) return CellValue::text(std::move(text));
  auto value = to_double(clean);
  if (!value) return CellValue::text(std::move(text));
  return CellValue::number(*value);
}

Cell make_cell(std::string raw) {
  Cell cell{std::move(raw), {}, CellValue::text("")};
  cell.text = normalize_text(cell.raw);
  cell.parsed = infer_cell(cell.raw);
  return cell;
}

Table::Table(std::string table_id, std::string caption,
             std::vector<ColumnMeta> columns,
             std::vector<std::vector<Cell>> rows)
    : table_id_(std::move(table_id)),
      caption_(std::move(caption)),
      columns_(std::move(columns)),
      rows_(std::move(rows)) {
  if (columns_.empty() || rows_.empty()) {
    throw TableError(TableErrorKind::kEmptyTable,
                     "table '" + table_id_ + "' has no rows or columns");
  }
  std::set<std::string> seen;
  for (const auto& col : columns_) {
    if (!seen.insert(col.name).second) {
      throw TableError(TableErrorKind::kDuplicateColumn,
                       "duplicate column: " + col.name);
    }
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != columns_.size()) {
      throw TableError(TableErrorKind::kRaggedRow,
                       "row " + std::to_string(r) + " has " +
                           std::to_string(rows_[r].size()) + " cells",
                       r + 2);
    }
  }
  numeric_columns_.resize(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    numeric_columns_[c] =
        std::any_of(rows_.begin(), rows_.end(),
                    [c](const auto& row) { return row[c].is_number(); });
  }
}

std::optional<std::size_t> Table::find_column(std::string_view name) const {
  std::string key = normalize_text(name);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].name == key) return c;
  }
  return std::nullopt;
}

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] =
      std::abs(value) < 1e15 && value == std::trunc(value)
          ? std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                          std::chars_format::fixed)
          : std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

Table parse_table(std::string_view text, const ParseOptions& options) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find('\n', start);
    std::string_view line = pos == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) {
    throw TableError(TableErrorKind::kEmptyTable, "empty table input");
  }

  std::vector<ColumnMeta> columns;
  std::set<std::string> names;
  for (auto& raw_name : split(lines[0], options.delimiter)) {
    ColumnMeta meta{raw_name, normalize_text(raw_name)};
    if (!names.insert(meta.name).second) {
      throw TableError(TableErrorKind::kDuplicateColumn,
                       "duplicate column: " + meta.name);
    }
    columns.push_back(std::move(meta));
  }
  if (lines.size() < 2) {
    throw TableError(TableErrorKind::kEmptyTable, "table has no data rows");
  }

  std::vector<std::vector<Cell>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split(lines[i], options.delimiter);
    if (fields.size() != columns.size()) {
      throw TableError(TableErrorKind::kRaggedRow,
                       "line " + std::to_string(i + 1) + ": expected " +
                           std::to_string(columns.size()) + " cells, got " +
                           std::to_string(fields.size()),
                       i + 1);
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (auto& field : fields) row.push_back(make_cell(std::move(field)));
    rows.push_back(std::move(row));
  }

  if (options.strict_dims &&
      (rows.size() > kMaxStrictRows || columns.size() > kMaxStrictCols)) {
    throw TableError(TableErrorKind::kOversizedTable,
                     "table is " + std::to_string(rows.size()) + "x" +
                         std::to_string(columns.size()) +
                         ", strict mode allows at most 50x10");
  }
  return Table(options.table_id, options.caption, std::move(columns),
               std::move(rows));
}

Table load_table_file(const std::string& path, ParseOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open table file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (options.table_id.empty()) {
    auto slash = path.find_last_of('/');
    options.table_id =
        slash == std::string::npos ? path : path.substr(slash + 1);
  }
  return parse_table(buffer.str(), options);
}

std::string serialize_table(const Table& table, char delimiter) {
  std::string out;
  for (std::size_t c = 0; c < table.col_count(); ++c) {
    if (c) out.push_back(delimiter);
    out += table.columns()[c].raw_name;
  }
  out.push_back('\n');
  for (const auto& row : table.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(delimiter);
      out += row[c].raw;
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<int> all_positions(std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
  return out;
}

View::View(const Table& table)
    : table_(&table),
      rows_(all_positions(table.row_count())),
      cols_(all_positions(table.col_count())) {}

View::View(const Table& table, std::vector<int> rows, std::vector<int> cols)
    : table_(&table), rows_(std::move(rows)), cols_(std::move(cols)) {
  auto canonical = [](std::vector<int>& v, std::size_t bound) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && (v.front() < 0 || static_cast<std::size_t>(v.back()) >= bound)) {
      throw TableError(TableErrorKind::kIndexOutOfBounds,
                       "view index out of bounds");
    }
  };
  canonical(rows_, table.row_count());
  canonical(cols_, table.col_count());
}

View View::with_rows(std::vector<int> source_rows) const {
  View out;
  out.table_ = table_;
  out.rows_ = std::move(source_rows);
  out.cols_ = cols_;
  return out;
}

View project(const View& view, const std::vector<int>& rows,
             const std::vector<int>& cols) {
  auto map = [](const std::vector<int>& positions,
                const std::vector<int>& source) {
    std::vector<int> out;
    out.reserve(positions.size());
    for (int p : positions) {
      if (p < 0 || static_cast<std::size_t>(p) >= source.size()) {
        throw TableError(TableErrorKind::kIndexOutOfBounds,
                         "projection index " + std::to_string(p) +
                             " out of bounds");
      }
      out.push_back(source[static_cast<std::size_t>(p)]);
    }
    return out;
  };
  return View(view.table(), map(rows, view.rows()), map(cols, view.cols()));
}

}  // namespace tablefv
