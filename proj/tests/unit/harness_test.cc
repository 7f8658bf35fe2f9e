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

#include "tablefv/harness.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "random_table.h"

namespace tablefv {
namespace {

namespace fs = std::filesystem;

const fs::path kToy = fs::path(TABLEFV_TEST_DATA_DIR) / "toy_dataset";

// Scratch dataset directory removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(std::string_view name)
      : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_ / "all_csv");
  }
  ~ScratchDir() { fs::remove_all(path_); }

  void write(const fs::path& rel, std::string_view text) const {
    std::ofstream(path_ / rel) << text;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

DataErrorKind load_error(const fs::path& root, const LoadOptions& opts = {}) {
  try {
    load_dataset(root, "test", opts);
  } catch (const DataError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected DataError";
  return DataErrorKind::kMalformed;
}

TEST(LoadDataset, ToyFixture) {
  Dataset d = load_dataset(kToy, "test");
  ASSERT_EQ(d.instances.size(), 2u);
  EXPECT_EQ(d.instances[0].channel, Channel::kSimple);
  EXPECT_EQ(d.instances[0].label, Label::kRefuted);
  EXPECT_EQ(d.instances[1].channel, Channel::kComplex);
  EXPECT_EQ(d.instances[1].label, Label::kEntailed);
  for (const Instance& inst : d.instances) {
    EXPECT_NO_THROW(d.table(inst.table_id));
  }
  EXPECT_EQ(d.table("2-1234567-1.html.csv").caption(), "1998 season");
}

TEST(LoadDataset, SkipsTableParsingWhenAsked) {
  LoadOptions opts;
  opts.load_tables = false;
  Dataset d = load_dataset(kToy, "test", opts);
  EXPECT_EQ(d.instances.size(), 2u);
  EXPECT_THROW(d.table("1-1342218-5.html.csv"), DataError);
}

TEST(LoadDataset, MissingFiles) {
  ScratchDir dir("tablefv_missing");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMissingFile);
  dir.write("test_id.json", R"(["a.csv"])");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMissingFile);
}

TEST(LoadDataset, MissingTable) {
  ScratchDir dir("tablefv_missing_table");
  dir.write("test_id.json", R"(["a.csv"])");
  dir.write("full_cleaned.json", R"({"a.csv": [["s"], [1], "c"]})");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMissingTable);
  dir.write("all_csv/a.csv", "x#y\n1#2\n");
  Dataset d = load_dataset(dir.path(), "test");
  ASSERT_EQ(d.instances.size(), 1u);
  EXPECT_EQ(d.instances[0].channel, Channel::kUnknown);
}

TEST(LoadDataset, LabelArityMismatch) {
  ScratchDir dir("tablefv_arity");
  dir.write("test_id.json", R"(["a.csv"])");
  dir.write("full_cleaned.json", R"({"a.csv": [["s", "t"], [1], "c"]})");
  dir.write("all_csv/a.csv", "x\n1\n");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kLabelArityMismatch);
}

TEST(LoadDataset, MalformedInputs) {
  ScratchDir dir("tablefv_malformed");
  dir.write("all_csv/a.csv", "x\n1\n");
  dir.write("test_id.json", R"({"not": "a list"})");
  dir.write("full_cleaned.json", R"({"a.csv": [["s"], [1], "c"]})");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMalformed);
  dir.write("test_id.json", R"(["a.csv")");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMalformed);
  dir.write("test_id.json", R"(["a.csv"])");
  dir.write("full_cleaned.json", R"({"a.csv": [["s"], [2], "c"]})");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMalformed);
}

TEST(LoadDataset, LenientRecordsBrokenTables) {
  ScratchDir dir("tablefv_lenient");
  dir.write("test_id.json", R"(["a.csv"])");
  dir.write("full_cleaned.json", R"({"a.csv": [["s"], [1], "c"]})");
  dir.write("all_csv/a.csv", "x#y\n1\n");
  EXPECT_EQ(load_error(dir.path()), DataErrorKind::kMalformed);
  LoadOptions opts;
  opts.lenient = true;
  Dataset d = load_dataset(dir.path(), "test", opts);
  EXPECT_EQ(d.table_errors.count("a.csv"), 1u);
  EXPECT_EQ(d.tables.at("a.csv"), nullptr);
}

TEST(Categorize, Examples) {
  using Tags = std::vector<std::string>;
  EXPECT_EQ(categorize("xxx achieves the highest score"), Tags{"superlative"});
  EXPECT_EQ(categorize("xxx did not get the best score"),
            (Tags{"negation", "superlative"}));
  EXPECT_EQ(categorize("xxx achieves 2 points in xxx game"), Tags{"none"});
  EXPECT_EQ(categorize("he didn't finish 3rd"), (Tags{"negation", "ordinal"}));
  EXPECT_EQ(categorize("the total attendance was higher than 500"),
            (Tags{"aggregation", "comparative"}));
}

std::vector<Instance> toy_instances(std::size_t n, testing::Rng& rng) {
  static const std::vector<std::string> kStatements = {
      "xxx achieves the highest score", "there are three democrats",
      "he did not win the first game", "all games were at home",
      "the average score is 3"};
  std::vector<Instance> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"t", testing::pick(rng, kStatements),
                   testing::coin(rng, 0.5) ? Label::kEntailed : Label::kRefuted,
                   testing::coin(rng, 0.5) ? Channel::kSimple : Channel::kComplex,
                   ""});
  }
  return out;
}

TEST(BuildReport, AllCorrectAndAllWrong) {
  testing::Rng rng(1);
  auto instances = toy_instances(40, rng);
  std::vector<InstanceResult> right, wrong;
  for (const Instance& inst : instances) {
    InstanceResult r;
    r.predicted = inst.label;
    right.push_back(r);
    r.predicted = inst.label == Label::kEntailed ? Label::kRefuted
                                                 : Label::kEntailed;
    wrong.push_back(r);
  }
  EXPECT_EQ(build_report(instances, right).overall.accuracy(), 1.0);
  EXPECT_EQ(build_report(instances, wrong).overall.accuracy(), 0.0);
}

TEST(BuildReport, ShuffleInvariantAndConsistent) {
  testing::Rng rng(2);
  auto instances = toy_instances(60, rng);
  std::vector<InstanceResult> results;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    InstanceResult r;
    r.predicted = testing::coin(rng, 0.5) ? Label::kEntailed : Label::kRefuted;
    r.failed = i % 17 == 0;
    r.timed_out = i % 13 == 0;
    results.push_back(r);
  }
  EvalReport a = build_report(instances, results);

  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Instance> si;
  std::vector<InstanceResult> sr;
  for (std::size_t i : order) {
    si.push_back(instances[i]);
    sr.push_back(results[i]);
  }
  EvalReport b = build_report(si, sr);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.to_text(), b.to_text());

  std::size_t channel_total = 0, channel_correct = 0;
  for (const auto& [name, t] : a.by_channel) {
    channel_total += t.total;
    channel_correct += t.correct;
  }
  EXPECT_EQ(channel_total, a.overall.total);
  EXPECT_EQ(channel_correct, a.overall.correct);
  std::size_t confusion = a.confusion[0][0] + a.confusion[0][1] +
                          a.confusion[1][0] + a.confusion[1][1];
  EXPECT_EQ(confusion, a.overall.total);
  // Each instance lands in at least one category.
  std::size_t category_total = 0;
  for (const auto& [name, t] : a.by_category) category_total += t.total;
  EXPECT_GE(category_total, a.overall.total);
  EXPECT_EQ(a.failures, 4u);
  EXPECT_EQ(a.timeouts, 5u);
}

TEST(RunPipeline, WorkedExample) {
  Table t = load_table_file(std::string(TABLEFV_TEST_DATA_DIR) + "/election.csv");
  PipelineConfig config;
  PipelineOutput out =
      run_pipeline(t, "there are three democrats incumbents", config);
  EXPECT_FALSE(out.timed_out);
  EXPECT_EQ(out.verdict.label, Label::kRefuted);
  EXPECT_FALSE(out.candidates.items.empty());
}

TEST(Evaluate, ToyDatasetAndThreadCounts) {
  Dataset d = load_dataset(kToy, "test");
  PipelineConfig one;
  one.threads = 1;
  PipelineConfig many;
  many.threads = 4;
  std::vector<InstanceResult> a, b;
  EvalReport ra = evaluate(d, one, &a);
  EvalReport rb = evaluate(d, many, &b);
  EXPECT_EQ(ra.overall.total, 2u);
  EXPECT_EQ(ra.to_json(), rb.to_json());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].predicted, b[i].predicted);
    EXPECT_EQ(a[i].candidates, b[i].candidates);
    EXPECT_FALSE(a[i].failed) << a[i].error;
  }
}

TEST(Evaluate, FailuresCountAsIncorrect) {
  Dataset d = load_dataset(kToy, "test");
  d.tables.erase("2-1234567-1.html.csv");
  std::vector<InstanceResult> details;
  EvalReport r = evaluate(d, PipelineConfig{}, &details);
  EXPECT_EQ(r.failures, 1u);
  EXPECT_TRUE(details[1].failed);
  EXPECT_LE(r.overall.correct, 1u);
}

TEST(Evaluate, ModelMissingIsAFailureNotACrash) {
  Dataset d = load_dataset(kToy, "test");
  PipelineConfig config;
  config.mode = DecisionMode::kRanking;
  EvalReport r = evaluate(d, config);
  EXPECT_EQ(r.failures, 2u);
}

TEST(ToolConfig, ParsesSections) {
  ToolConfig c = parse_tool_config(R"({
    "search": {"max_step": 5, "max_traces": 20, "dedupe": false},
    "linearization": {"mode": "concatenation", "scan": "vertical", "order": "ft"},
    "evaluate": {"mode": "weighted", "timeout_ms": 2500, "threads": 3},
    "paths": {"data_root": "/data", "model": "m.json"},
    "delimiter": ","
  })");
  EXPECT_EQ(c.search.max_step, 5);
  EXPECT_EQ(c.search.max_traces, 20);
  EXPECT_FALSE(c.search.dedupe);
  EXPECT_TRUE(c.search.trigger_pruning);
  EXPECT_EQ(c.linearization.mode, LinearizeMode::kConcatenation);
  EXPECT_EQ(c.linearization.scan, Scan::kVertical);
  EXPECT_EQ(c.linearization.order, Order::kFactThenTable);
  EXPECT_EQ(c.mode, DecisionMode::kWeighted);
  EXPECT_EQ(c.timeout.count(), 2500);
  EXPECT_EQ(c.threads, 3u);
  EXPECT_EQ(c.data_root, "/data");
  EXPECT_EQ(c.model_path, "m.json");
  EXPECT_EQ(c.delimiter, ',');
}

TEST(ToolConfig, Defaults) {
  ToolConfig c = parse_tool_config("{}");
  EXPECT_EQ(c.search.max_step, 7);
  EXPECT_EQ(c.search.max_traces, 50);
  EXPECT_EQ(c.timeout.count(), 10000);
  EXPECT_EQ(c.delimiter, '#');
}

TEST(ToolConfig, Rejects) {
  EXPECT_THROW(parse_tool_config("["), std::invalid_argument);
  EXPECT_THROW(parse_tool_config("[]"), std::invalid_argument);
  EXPECT_THROW(parse_tool_config(R"({"search": {"max_step": 0}})"),
               std::invalid_argument);
  EXPECT_THROW(parse_tool_config(R"({"delimiter": "##"})"),
               std::invalid_argument);
  EXPECT_THROW(parse_tool_config(R"({"evaluate": {"mode": "x"}})"),
               std::invalid_argument);
  EXPECT_THROW(parse_tool_config(R"({"search": {"max_step": "many"}})"),
               std::invalid_argument);
}

}  // namespace
}  // namespace tablefv
