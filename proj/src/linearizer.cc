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

#include "tablefv/linearizer.h"

namespace tablefv {

LinearizeMode parse_linearize_mode(std::string_view name) {
  if (name == "template") return LinearizeMode::kTemplate;
  if (name == "concatenation" || name == "concat") {
    return LinearizeMode::kConcatenation;
  }
  throw std::invalid_argument("unknown linearization mode '" +
                              std::string(name) + "'");
}

Scan parse_scan(std::string_view name) {
  if (name == "horizontal") return Scan::kHorizontal;
  if (name == "vertical") return Scan::kVertical;
  throw std::invalid_argument("unknown scan '" + std::string(name) + "'");
}

Order parse_order(std::string_view name) {
  if (name == "tf") return Order::kTableThenFact;
  if (name == "ft") return Order::kFactThenTable;
  throw std::invalid_argument("unknown order '" + std::string(name) + "'");
}

View prune_columns(const Table& table, const LinkedStatement& linked) {
  std::vector<int> cols = linked.linked_columns();
  if (cols.empty()) cols = all_positions(table.col_count());
  return View(table, all_positions(table.row_count()), std::move(cols));
}

Grid grid_of(const View& view) {
  Grid grid;
  for (int c : view.cols()) {
    grid.header.push_back(view.table().columns()[static_cast<std::size_t>(c)].name);
  }
  for (std::size_t r = 0; r < view.row_count(); ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < view.col_count(); ++c) row.push_back(view.at(r, c).text);
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

Grid transpose(const Grid& grid) {
  Grid out;
  out.header.push_back("column");
  for (std::size_t r = 0; r < grid.rows.size(); ++r) out.header.push_back(row_label(r));
  for (std::size_t c = 0; c < grid.header.size(); ++c) {
    std::vector<std::string> row{grid.header[c]};
    for (const auto& source_row : grid.rows) row.push_back(source_row[c]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string row_label(std::size_t index) {
  return index == 0 ? "row one" : "row " + std::to_string(index + 1);
}

std::string template_text(const Grid& grid) {
  std::string out;
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    if (r > 0) out += ' ';
    for (std::size_t c = 0; c < grid.header.size(); ++c) {
      if (c == 0) {
        out += row_label(r) + "'s ";
      } else {
        out += "; the ";
      }
      out += grid.header[c] + " is " + grid.rows[r][c];
    }
    out += '.';
  }
  return out;
}

Linearization linearize(const View& view, std::string_view statement,
                        const LinearizationSpec& spec) {
  if (view.source() == nullptr || view.empty() || view.col_count() == 0) {
    throw EmptyView("cannot linearize an empty view");
  }
  Grid grid = grid_of(view);
  Linearization out;
  out.statement = std::string(statement);

  if (spec.mode == LinearizeMode::kTemplate) {
    out.table_text =
        template_text(spec.scan == Scan::kVertical ? transpose(grid) : grid);
  } else {
    std::vector<std::string> cells;
    auto add = [&](std::size_t r, std::size_t c) {
      cells.push_back(grid.rows[r][c]);
      out.column_annotations.push_back(grid.header[c]);
    };
    if (spec.scan == Scan::kHorizontal) {
      for (std::size_t r = 0; r < grid.rows.size(); ++r) {
        for (std::size_t c = 0; c < grid.header.size(); ++c) add(r, c);
      }
    } else {
      for (std::size_t c = 0; c < grid.header.size(); ++c) {
        for (std::size_t r = 0; r < grid.rows.size(); ++r) add(r, c);
      }
    }
    std::string sep = " " + std::string(kSeparator) + " ";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out.table_text += sep;
      out.table_text += cells[i];
    }
  }

  std::string sep = " " + std::string(kSeparator) + " ";
  out.text = spec.order == Order::kTableThenFact
                 ? out.table_text + sep + out.statement
                 : out.statement + sep + out.table_text;
  return out;
}

}  // namespace tablefv
