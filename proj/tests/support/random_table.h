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

// Random small tables and statements for property tests.

#ifndef TABLEFV_TESTS_SUPPORT_RANDOM_TABLE_H_
#define TABLEFV_TESTS_SUPPORT_RANDOM_TABLE_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tablefv/table.h"

namespace tablefv::testing {

using Rng = std::mt19937_64;

struct RandomTableSpec {
  std::size_t min_rows = 1;
  std::size_t max_rows = 4;
  std::size_t min_cols = 1;
  std::size_t max_cols = 4;
  // Chance that a column draws from the numeric pool.
  double numeric_column = 0.5;
  // Chance that a cell in a numeric column is text anyway.
  double stray_text = 0.1;
};

// Raw header plus rows, before parsing.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_text(char delimiter = '#') const;
};

RawTable random_raw_table(Rng& rng, const RandomTableSpec& spec = {});
Table random_table(Rng& rng, const RandomTableSpec& spec = {},
                   const std::string& caption = "");

// Raw cells that cover the cell grammar: plain numbers, separators, unit
// suffixes, dates, and words.
const std::vector<std::string>& numeric_pool();
const std::vector<std::string>& text_pool();

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive
bool coin(Rng& rng, double p);

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[uniform(rng, 0, items.size() - 1)];
}

// Random sorted subset of [0, n).
std::vector<int> random_subset(Rng& rng, std::size_t n);

}  // namespace tablefv::testing

#endif  // TABLEFV_TESTS_SUPPORT_RANDOM_TABLE_H_
