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

// Breadth-first latent program search over typed caches.
//
// A search state holds four caches (Num, Str, Bool, View). Every function
// application consumes its arguments from the caches and produces one
// result. A Bool result that leaves the scalar caches empty finishes a
// candidate program; a non-Bool result that leaves them empty is a dead end.

#ifndef TABLEFV_LPA_SEARCH_H_
#define TABLEFV_LPA_SEARCH_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tablefv/dsl.h"
#include "tablefv/entity_linker.h"
#include "tablefv/table.h"

namespace tablefv {

// Word-to-function mapping that admits functions into the search.
class TriggerLexicon {
 public:
  // The lexicon shipped with the library.
  static const TriggerLexicon& builtin();
  // Parses the JSON lexicon format; throws std::invalid_argument.
  static TriggerLexicon from_json(std::string_view text);

  int version() const { return version_; }
  const std::vector<std::string>& always_on() const { return always_on_; }

  // Function names triggered by the statement tokens.
  std::vector<std::string> lookup(const std::vector<Token>& tokens) const;

 private:
  int version_ = 0;
  std::map<std::string, std::vector<std::string>, std::less<>> words_;
  // Multi-word phrases, keyed by their space-joined words.
  std::map<std::string, std::vector<std::string>, std::less<>> phrases_;
  std::vector<std::string> numeral_;
  std::vector<std::string> ordinal_;
  std::vector<std::string> always_on_;
};

bool is_ordinal_word(std::string_view word);

// Always-on core plus every triggered function, in catalog order.
std::vector<const FunctionDef*> trigger_filter(
    const LinkedStatement& linked,
    const TriggerLexicon& lexicon = TriggerLexicon::builtin());

struct SearchConfig {
  int max_step = 7;
  int max_traces = 50;
  bool trigger_pruning = true;
  // Skips states whose cache values match an already expanded state.
  bool dedupe = true;
  // Zero disables the wall-clock limit.
  std::chrono::milliseconds time_budget{0};
  // Hard cap on expanded states.
  std::uint64_t max_expansions = 5'000'000;
};

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t deduped = 0;
  std::uint64_t errored = 0;
  std::uint64_t discarded = 0;
  std::uint64_t pruned = 0;
  bool timed_out = false;
  bool truncated = false;  // stopped at max_traces or max_expansions
};

struct Candidate {
  Program program;
  bool result = false;
};

struct CandidateSet {
  std::vector<Candidate> items;  // sorted by trace
  SearchStats stats;
};

// Initial cache contents.
struct Seeds {
  std::vector<double> numbers;
  std::vector<std::string> strings;
};

Seeds seeds_from(const LinkedStatement& linked);

// One cache entry: a value and the expression that produced it.
struct CacheEntry {
  TypedValue value;
  ExprPtr expr;
};

struct CacheState {
  std::vector<CacheEntry> num;
  std::vector<CacheEntry> str;
  std::vector<CacheEntry> boolean;
  std::vector<CacheEntry> view;
  int depth = 0;  // function applications so far

  static CacheState initial(const Table& table, const Seeds& seeds);

  // Scalar entries still waiting to be consumed.
  std::size_t pending() const {
    return num.size() + str.size() + boolean.size();
  }
  // Views produced by a function (the root view T excluded).
  std::size_t derived_views() const;

  // Canonical key over entry traces. Equal keys mean identical states.
  std::string trace_key() const;
  // Key over executed values only; used for memoized dedupe.
  std::string value_key() const;
};

// Searches with an explicit function set.
CandidateSet search(const Table& table, const Seeds& seeds,
                    const std::vector<const FunctionDef*>& functions,
                    const SearchConfig& config);

// Seeds from the linker; functions from trigger_filter when pruning is on,
// otherwise the whole catalog.
CandidateSet search(const Table& table, const LinkedStatement& linked,
                    const SearchConfig& config = {});

}  // namespace tablefv

#endif  // TABLEFV_LPA_SEARCH_H_
