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

#include "tablefv/lpa_search.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "exhaustive_enumerator.h"
#include "link_checker.h"
#include "random_table.h"
#include "search_checks.h"

namespace tablefv {
namespace {

Table election() {
  return load_table_file(std::string(TABLEFV_TEST_DATA_DIR) + "/election.csv");
}

std::set<std::string> names(const std::vector<const FunctionDef*>& fns) {
  std::set<std::string> out;
  for (const FunctionDef* fn : fns) out.insert(fn->name);
  return out;
}

std::set<std::string> triggered(std::string_view statement) {
  Table t = parse_table("a\nx");
  return names(trigger_filter(link(statement, t)));
}

const std::set<std::string> kCore = {
    "filter_eq", "filter_not_eq",       "filter_greater", "filter_less",
    "filter_ge", "filter_le",           "filter_str_contains", "count",
    "eq",        "and",                 "hop"};

std::vector<const FunctionDef*> full_catalog() {
  std::vector<const FunctionDef*> out;
  for (const FunctionDef& fn : catalog()) out.push_back(&fn);
  return out;
}

TEST(TriggerFilter, Examples) {
  EXPECT_TRUE(triggered("scored more goals").count("greater"));
  std::set<std::string> highest = triggered("the highest attendance");
  EXPECT_TRUE(highest.count("max"));
  EXPECT_TRUE(highest.count("argmax"));
  EXPECT_EQ(triggered("zebras enjoy quiet afternoons"), kCore);
}

TEST(TriggerFilter, ClassesPhrasesAndContractions) {
  std::set<std::string> ordinal = triggered("finished 2nd overall");
  EXPECT_TRUE(ordinal.count("nth_argmax"));
  EXPECT_TRUE(ordinal.count("nth_min"));
  std::set<std::string> there = triggered("there were five games");
  EXPECT_TRUE(there.count("count"));
  EXPECT_TRUE(triggered("he didn't win").count("not"));
}

TEST(TriggerFilter, CatalogOrderAndDeterminism) {
  Table t = election();
  LinkedStatement linked = link("the most recent democrat was not re-elected", t);
  auto a = trigger_filter(linked);
  auto b = trigger_filter(linked);
  EXPECT_EQ(a, b);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(a[i - 1], a[i]);
}

TEST(TriggerLexicon, RejectsUnknownFunctions) {
  EXPECT_THROW(TriggerLexicon::from_json(R"({"words": {"x": ["bogus"]}})"),
               std::invalid_argument);
  EXPECT_THROW(TriggerLexicon::from_json("{"), std::invalid_argument);
  EXPECT_EQ(TriggerLexicon::builtin().version(), 1);
}

TEST(Search, WorkedExample) {
  Table t = election();
  LinkedStatement linked = link("there are three democrats incumbents", t);
  Seeds seeds = seeds_from(linked);
  EXPECT_EQ(seeds.numbers, std::vector<double>{3});
  EXPECT_EQ(seeds.strings, std::vector<std::string>{"democratic"});
  CandidateSet set = search(t, linked);
  auto it = std::find_if(set.items.begin(), set.items.end(), [](const auto& c) {
    return c.program.trace() ==
           "eq(count(filter_eq(T,col:party,str:\"democratic\")),num:3)";
  });
  ASSERT_NE(it, set.items.end());
  EXPECT_FALSE(it->result);
}

TEST(Search, EmptySeedsOnTinyTable) {
  Table t = parse_table("a\nx");
  SearchConfig config;
  CandidateSet set = search(t, Seeds{}, full_catalog(), config);
  std::vector<std::pair<std::string, bool>> got;
  for (const auto& c : set.items) got.emplace_back(c.program.trace(), c.result);
  EXPECT_EQ(got, (std::vector<std::pair<std::string, bool>>{
                     {"is_not_empty(T)", true}, {"only(T)", true}}));
}

TEST(Search, MatchesExhaustiveEnumeration) {
  testing::Rng rng(2024);
  testing::RandomTableSpec spec;
  spec.max_rows = 3;
  spec.max_cols = 3;
  SearchConfig config;
  config.max_step = 3;
  config.max_traces = 1'000'000;
  config.dedupe = false;
  std::size_t total = 0;
  for (int i = 0; i < 25; ++i) {
    Table t = testing::random_table(rng, spec);
    Seeds seeds = testing::random_seeds(rng, t);
    CandidateSet set = search(t, seeds, full_catalog(), config);
    std::vector<testing::OracleProgram> got;
    for (const auto& c : set.items) got.push_back({c.program.trace(), c.result});
    auto expected =
        testing::enumerate_programs(t, seeds, full_catalog(), config.max_step);
    ASSERT_EQ(got.size(), expected.size()) << serialize_table(t);
    EXPECT_TRUE(got == expected) << serialize_table(t);
    total += got.size();
  }
  EXPECT_GT(total, 1000u);
}

TEST(Search, FidelityOnRandomStatements) {
  testing::Rng rng(77);
  SearchConfig config;
  config.max_step = 5;
  for (int i = 0; i < 40; ++i) {
    Table t = testing::random_table(rng);
    LinkedStatement linked = link(testing::random_statement(rng, t), t);
    CandidateSet set = search(t, linked, config);
    auto problems =
        testing::fidelity_violations(set, t, seeds_from(linked), config);
    ASSERT_TRUE(problems.empty()) << problems[0];
  }
}

TEST(Search, RespectsMaxTraces) {
  Table t = election();
  LinkedStatement linked = link("there are three democrats incumbents", t);
  SearchConfig config;
  config.max_traces = 3;
  CandidateSet set = search(t, linked, config);
  EXPECT_EQ(set.items.size(), 3u);
  EXPECT_TRUE(set.stats.truncated);
}

TEST(Search, Deterministic) {
  Table t = election();
  LinkedStatement linked = link("john j. mcfall was first elected in 1956", t);
  CandidateSet a = search(t, linked);
  CandidateSet b = search(t, linked);
  ASSERT_EQ(a.items.size(), b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    EXPECT_EQ(a.items[i].program, b.items[i].program);
    EXPECT_EQ(a.items[i].result, b.items[i].result);
  }
  EXPECT_EQ(a.stats.expanded, b.stats.expanded);
}

TEST(Search, RejectsBadConfig) {
  Table t = election();
  SearchConfig config;
  config.max_step = 0;
  EXPECT_THROW(search(t, Seeds{}, full_catalog(), config),
               std::invalid_argument);
}

TEST(Dedupe, OrderOfPushesDoesNotMatter) {
  Table t = election();
  CacheState a = CacheState::initial(t, Seeds{{2, 5}, {}});
  CacheState b = CacheState::initial(t, Seeds{{5, 2}, {}});
  EXPECT_EQ(a.value_key(), b.value_key());
  EXPECT_NE(a.trace_key(), b.trace_key() + "x");
}

TEST(Dedupe, SameValueDifferentTraceIsDeduped) {
  Table t = election();
  CacheState a = CacheState::initial(t, Seeds{{2}, {}});
  CacheState b = a;
  b.num[0].expr = parse_program("count(filter_eq(T,col:party,str:\"democratic\"))")
                      .root_ptr();
  EXPECT_EQ(a.value_key(), b.value_key());
  EXPECT_NE(a.trace_key(), b.trace_key());
}

TEST(Dedupe, DifferentBoolIsNotDeduped) {
  Table t = election();
  CacheState a = CacheState::initial(t, Seeds{});
  CacheState b = a;
  a.boolean.push_back({TypedValue::boolean(true), parse_program("only(T)").root_ptr()});
  b.boolean.push_back({TypedValue::boolean(false), parse_program("only(T)").root_ptr()});
  EXPECT_NE(a.value_key(), b.value_key());
}

TEST(Dedupe, OnlyRemovesExecutionIdenticalDuplicates) {
  testing::Rng rng(505);
  SearchConfig on;
  on.max_step = 4;
  on.max_traces = 1'000'000;
  SearchConfig off = on;
  off.dedupe = false;
  for (int i = 0; i < 50; ++i) {
    Table t = testing::random_table(rng);
    LinkedStatement linked = link(testing::random_statement(rng, t), t);
    CandidateSet with = search(t, linked, on);
    CandidateSet without = search(t, linked, off);
    std::set<std::pair<std::string, bool>> all;
    for (const auto& c : without.items) all.insert({c.program.trace(), c.result});
    std::set<bool> kept_results;
    for (const auto& c : with.items) {
      EXPECT_TRUE(all.count({c.program.trace(), c.result}))
          << c.program.trace();
      kept_results.insert(c.result);
    }
    for (const auto& [trace, result] : all) {
      EXPECT_TRUE(kept_results.count(result)) << trace;
    }
    EXPECT_LE(with.stats.expanded, without.stats.expanded);
  }
}

TEST(CacheState, PendingAndDerivedViews) {
  Table t = election();
  CacheState s = CacheState::initial(t, Seeds{{3}, {"democratic"}});
  EXPECT_EQ(s.pending(), 2u);
  EXPECT_EQ(s.derived_views(), 0u);
  s.view.push_back({TypedValue::view(View(t)),
                    parse_program("first_row(T)").root_ptr()});
  EXPECT_EQ(s.derived_views(), 1u);
}

}  // namespace
}  // namespace tablefv
