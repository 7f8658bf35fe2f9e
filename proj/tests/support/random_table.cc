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

#include "random_table.h"

#include <algorithm>

namespace tablefv::testing {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

const std::vector<std::string>& numeric_pool() {
  static const std::vector<std::string> kPool = {
      "0",   "1",    "2",        "3",     "5",   "7",      "10",
      "12",  "-2",   "3.4 (ot)", "1,200", "45%", "2.5",    "100",
      "3",   "7",    "51",       "12 pts", "+4", "1,234.5", "0.5"};
  return kPool;
}

const std::vector<std::string>& text_pool() {
  static const std::vector<std::string> kPool = {
      "democratic", "republican", "february",         "re-elected",
      "lost",       "john smith", "10 february 2001", "1992-05-03",
      "7-5, 6-4",   "n/a",        "Home",             "away",
      "x",          "the games",  "Retired  Champion"};
  return kPool;
}

std::string RawTable::to_text(char delimiter) const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += delimiter;
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

RawTable random_raw_table(Rng& rng, const RandomTableSpec& spec) {
  static const std::vector<std::string> kNames = {
      "party", "score", "year", "name", "result", "points", "team", "rank"};
  RawTable t;
  std::size_t cols = uniform(rng, spec.min_cols, spec.max_cols);
  std::size_t rows = uniform(rng, spec.min_rows, spec.max_rows);
  std::vector<std::string> names = kNames;
  std::shuffle(names.begin(), names.end(), rng);
  std::vector<bool> numeric(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    t.header.push_back(c < names.size() ? names[c] : "col " + std::to_string(c));
    numeric[c] = coin(rng, spec.numeric_column);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < cols; ++c) {
      bool text = !numeric[c] || coin(rng, spec.stray_text);
      row.push_back(pick(rng, text ? text_pool() : numeric_pool()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table random_table(Rng& rng, const RandomTableSpec& spec,
                   const std::string& caption) {
  ParseOptions options;
  options.table_id = "random";
  options.caption = caption;
  return parse_table(random_raw_table(rng, spec).to_text(), options);
}

std::vector<int> random_subset(Rng& rng, std::size_t n) {
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng, 0.5)) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace tablefv::testing
