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

// Text premises from (pruned) tables for sequence models.

#ifndef TABLEFV_LINEARIZER_H_
#define TABLEFV_LINEARIZER_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tablefv/entity_linker.h"
#include "tablefv/table.h"

namespace tablefv {

enum class LinearizeMode { kConcatenation, kTemplate };
enum class Scan { kHorizontal, kVertical };
enum class Order { kTableThenFact, kFactThenTable };

struct LinearizationSpec {
  LinearizeMode mode = LinearizeMode::kTemplate;
  Scan scan = Scan::kHorizontal;
  Order order = Order::kTableThenFact;
};

// "template" | "concatenation", "horizontal" | "vertical", "tf" | "ft".
// Throw std::invalid_argument on anything else.
LinearizeMode parse_linearize_mode(std::string_view name);
Scan parse_scan(std::string_view name);
Order parse_order(std::string_view name);

inline constexpr std::string_view kSeparator = "[SEP]";

class EmptyView : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keeps the columns touched by a cell or column link; all columns when
// nothing is linked.
View prune_columns(const Table& table, const LinkedStatement& linked);

// Header plus cell texts in view order.
struct Grid {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Grid grid_of(const View& view);
// Header becomes {"column", "row one", "row 2", ...}; each output row is a
// column name followed by that column's cells.
Grid transpose(const Grid& grid);

// "row one", then "row 2", "row 3", ...
std::string row_label(std::size_t index);

// "row one's a is x; the b is y." per row, rows joined by a space.
std::string template_text(const Grid& grid);

struct Linearization {
  std::string table_text;
  // Concatenation mode: the column name of each [SEP]-separated cell.
  std::vector<std::string> column_annotations;
  std::string statement;
  std::string text;  // both segments joined by " [SEP] " in the configured order
};

// Throws EmptyView when the view has no rows or no columns.
Linearization linearize(const View& view, std::string_view statement,
                        const LinearizationSpec& spec);

}  // namespace tablefv

#endif  // TABLEFV_LINEARIZER_H_
