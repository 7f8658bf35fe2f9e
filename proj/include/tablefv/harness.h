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

// Dataset loading, the end-to-end verification pipeline, and evaluation.

#ifndef TABLEFV_HARNESS_H_
#define TABLEFV_HARNESS_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tablefv/entity_linker.h"
#include "tablefv/linearizer.h"
#include "tablefv/lpa_search.h"
#include "tablefv/ranker.h"
#include "tablefv/table.h"

namespace tablefv {

enum class Channel { kSimple, kComplex, kUnknown };
std::string_view channel_name(Channel channel);

struct Instance {
  std::string table_id;
  std::string statement;
  Label label = Label::kRefuted;
  Channel channel = Channel::kUnknown;
  std::string caption;
};

enum class DataErrorKind {
  kMissingFile,
  kMissingTable,
  kLabelArityMismatch,
  kMalformed,
};

class DataError : public std::runtime_error {
 public:
  DataError(DataErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  DataErrorKind kind() const { return kind_; }

 private:
  DataErrorKind kind_;
};

struct Dataset {
  std::vector<Instance> instances;
  // Null when tables were not loaded or failed to parse leniently.
  std::map<std::string, std::shared_ptr<const Table>> tables;
  std::map<std::string, std::string> table_errors;

  const Table& table(const std::string& id) const;
};

struct LoadOptions {
  char delimiter = '#';
  bool strict_dims = false;
  // Skip parsing tables; ids are still checked for existence.
  bool load_tables = true;
  // Record unparsable tables in table_errors instead of throwing.
  bool lenient = false;
};

// Reads a released-layout dataset under `root`:
//   {split}_id.json                       table ids of the split
//   r1_training_all.json, r2_training_all.json
//                                         simple and complex channel records
//   full_cleaned.json                     fallback, channel unknown
//   all_csv/<table id>                    tables
// Each file is looked up in root, root/data and root/collected_data.
// Records map a table id to [[statements], [labels], caption].
// Throws DataError.
Dataset load_dataset(const std::filesystem::path& root, std::string_view split,
                     const LoadOptions& options = {});

// Operation tags from the category lexicon; {"none"} when nothing fires.
std::vector<std::string> categorize(std::string_view statement);

struct PipelineConfig {
  SearchConfig search;
  LinkerOptions linker;
  DecisionMode mode = DecisionMode::kVoting;
  const Scorer* scorer = nullptr;
  DecideOptions decide;
  // Per-instance budget; a timed-out instance is predicted REFUTED.
  std::chrono::milliseconds timeout{10000};
  // Zero picks the hardware concurrency.
  std::size_t threads = 0;
};

struct PipelineOutput {
  LinkedStatement linked;
  CandidateSet candidates;
  Verdict verdict;
  bool timed_out = false;
};

// link, search, decide for one statement.
PipelineOutput run_pipeline(const Table& table, std::string_view statement,
                            const PipelineConfig& config);

struct InstanceResult {
  Label predicted = Label::kRefuted;
  bool timed_out = false;
  bool failed = false;
  std::string error;
  std::size_t candidates = 0;
  double seconds = 0.0;
};

struct Tally {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / total;
  }
};

struct EvalReport {
  Tally overall;
  std::map<std::string, Tally> by_channel;
  std::map<std::string, Tally> by_category;
  // confusion[gold][predicted], index 1 = ENTAILED.
  std::size_t confusion[2][2] = {{0, 0}, {0, 0}};
  std::size_t timeouts = 0;
  std::size_t failures = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Pure fold over per-instance predictions.
EvalReport build_report(const std::vector<Instance>& instances,
                        const std::vector<InstanceResult>& results);

// Runs the pipeline on every instance in parallel. Failures count as
// incorrect and never abort the run.
EvalReport evaluate(const Dataset& dataset, const PipelineConfig& config,
                    std::vector<InstanceResult>* details = nullptr);

// Settings read from a JSON config file. Absent keys keep their defaults.
struct ToolConfig {
  SearchConfig search;
  LinearizationSpec linearization;
  DecisionMode mode = DecisionMode::kVoting;
  std::chrono::milliseconds timeout{10000};
  std::size_t threads = 0;
  std::string data_root;
  std::string model_path;
  char delimiter = '#';
};

// Throws std::invalid_argument on malformed input.
ToolConfig parse_tool_config(std::string_view json_text);
ToolConfig load_tool_config(const std::string& path);

}  // namespace tablefv

#endif  // TABLEFV_HARNESS_H_
