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

// Linearly separable candidate dumps for ranker tests.

#ifndef TABLEFV_TESTS_SUPPORT_SYNTHETIC_DUMP_H_
#define TABLEFV_TESTS_SUPPORT_SYNTHETIC_DUMP_H_

#include <string>
#include <vector>

#include "random_table.h"
#include "tablefv/ranker.h"

namespace tablefv::testing {

// Function that appears in exactly the label-consistent candidates.
inline constexpr std::string_view kMarkerFunction = "only";

// Statements over `table`, each with 2 to 6 candidates. Candidates whose
// result agrees with the label contain the marker function; the others
// never do. Every statement has at least one of each.
std::vector<DumpRecord> synthetic_dump(Rng& rng, const Table& table,
                                       std::size_t statements);

// Fraction of (consistent, inconsistent) candidate pairs within a statement
// that `scorer` orders strictly correctly.
double pairwise_ranking_accuracy(const Scorer& scorer,
                                 const std::vector<DumpRecord>& dump);

}  // namespace tablefv::testing

#endif  // TABLEFV_TESTS_SUPPORT_SYNTHETIC_DUMP_H_
