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

// Brute-force program enumeration used as an oracle for the search.
//
// Terms are built bottom-up over resource masks (one bit per seed plus one
// for the root view) and evaluated with the reference interpreter. A term is
// reported when it is Bool, uses every seed, and admits an application order
// in which each step before the last leaves a scalar unconsumed.

#ifndef TABLEFV_TESTS_SUPPORT_EXHAUSTIVE_ENUMERATOR_H_
#define TABLEFV_TESTS_SUPPORT_EXHAUSTIVE_ENUMERATOR_H_

#include <string>
#include <vector>

#include "tablefv/dsl.h"
#include "tablefv/lpa_search.h"
#include "tablefv/table.h"

namespace tablefv::testing {

struct OracleProgram {
  std::string trace;
  bool result = false;

  bool operator==(const OracleProgram&) const = default;
};

// Sorted by trace, without duplicates.
std::vector<OracleProgram> enumerate_programs(
    const Table& table, const Seeds& seeds,
    const std::vector<const FunctionDef*>& functions, int max_calls);

}  // namespace tablefv::testing

#endif  // TABLEFV_TESTS_SUPPORT_EXHAUSTIVE_ENUMERATOR_H_
