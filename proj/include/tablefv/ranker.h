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

// Scoring of (statement, program) pairs and verdict aggregation.

#ifndef TABLEFV_RANKER_H_
#define TABLEFV_RANKER_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tablefv/dsl.h"
#include "tablefv/entity_linker.h"
#include "tablefv/lpa_search.h"

namespace tablefv {

enum class Label { kRefuted = 0, kEntailed = 1 };

std::string_view label_name(Label label);  // "ENTAILED" / "REFUTED"
Label label_from_bool(bool entailed);

// Hashed sparse features live in [0, kFeatureDim).
inline constexpr std::uint32_t kFeatureDim = 1u << 20;

std::uint32_t hash_feature(std::string_view name);

// Sorted by id; colliding names are summed.
using FeatureVector = std::vector<std::pair<std::uint32_t, double>>;

// Readable feature names before hashing, one entry per occurrence:
//   s1:/s2:   statement unigrams and bigrams over masked lemmas
//   p1:/p2:   function names and parent>child pairs; root=<fn>
//   col_linked=0|1, str_leaf, num_leaf
//   x:<token>|<fn> cross features; depth=<calls>
//   c1:/cx:   caption tokens, only with use_caption
std::vector<std::string> feature_names(const LinkedStatement& statement,
                                       const Program& program,
                                       bool use_caption);

FeatureVector featurize(const LinkedStatement& statement,
                        const Program& program, bool use_caption);

// Any p(statement, program) in (0, 1).
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const LinkedStatement& statement,
                       const Program& program) const = 0;
};

class ScorerModel : public Scorer {
 public:
  ScorerModel() = default;
  explicit ScorerModel(bool use_caption) : use_caption_(use_caption) {}

  double score(const LinkedStatement& statement,
               const Program& program) const override;
  double score_features(const FeatureVector& features) const;
  double logit(const FeatureVector& features) const;

  bool use_caption() const { return use_caption_; }
  double bias() const { return bias_; }
  void set_bias(double b) { bias_ = b; }
  double weight(std::uint32_t id) const;
  void set_weight(std::uint32_t id, double w);
  const std::unordered_map<std::uint32_t, double>& weights() const {
    return weights_;
  }

  std::string to_json() const;
  // Throws std::invalid_argument on malformed or incompatible input.
  static ScorerModel from_json(std::string_view text);
  void save(const std::string& path) const;
  static ScorerModel load(const std::string& path);

  bool operator==(const ScorerModel& other) const {
    return use_caption_ == other.use_caption_ && bias_ == other.bias_ &&
           weights_ == other.weights_;
  }

 private:
  bool use_caption_ = false;
  double bias_ = 0.0;
  std::unordered_map<std::uint32_t, double> weights_;
};

inline constexpr int kModelFormatVersion = 1;

// One statement of a candidate dump.
struct DumpRecord {
  std::string table_id;
  std::string statement;
  Label label = Label::kRefuted;
  LinkedStatement linked;
  std::vector<Candidate> candidates;
};

std::string dump_record_to_json(const DumpRecord& record);
DumpRecord dump_record_from_json(std::string_view line);
// JSON Lines; one record per statement.
void write_dump(const std::string& path, const std::vector<DumpRecord>& records);
std::vector<DumpRecord> read_dump(const std::string& path);

class DegenerateDump : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  int epochs = 30;
  double learning_rate = 0.1;
  double l2 = 1e-5;
  double heldout_fraction = 0.2;  // statement-level split
  std::uint64_t seed = 17;
  bool use_caption = false;
};

struct TrainReport {
  // Mean training log loss; entry 0 is before the first epoch.
  std::vector<double> train_loss;
  double heldout_loss = 0.0;
  double heldout_pairwise_accuracy = 0.0;
  std::size_t train_statements = 0;
  std::size_t heldout_statements = 0;
  std::size_t train_examples = 0;
};

// Logistic regression on weak labels: a candidate is positive when its
// result agrees with the statement label. Throws DegenerateDump when every
// candidate has the same weak label or the dump is empty.
ScorerModel train(const std::vector<DumpRecord>& dump, const TrainConfig& config,
                  TrainReport* report = nullptr);

// Fraction of (positive, negative) candidate pairs within a statement that
// the scorer orders correctly. Statements lacking either class are skipped.
// Returns nullopt when no pair exists.
std::optional<double> pairwise_accuracy(const Scorer& scorer,
                                        const std::vector<DumpRecord>& dump);

enum class DecisionMode { kVoting, kWeighted, kRanking };

std::string_view mode_name(DecisionMode mode);
// Throws std::invalid_argument for unknown names.
DecisionMode parse_mode(std::string_view name);

struct Verdict {
  Label label = Label::kRefuted;
  double confidence = 0.0;
  std::optional<Program> rationale;  // ranking mode with candidates only
};

struct DecideOptions {
  // Outcome of an even vote or a zero weighted sum.
  Label tie_label = Label::kRefuted;
};

class ModelMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weighted and ranking modes require a scorer; throws ModelMissing.
Verdict decide(const std::vector<Candidate>& candidates,
               const LinkedStatement& statement, const Scorer* scorer,
               DecisionMode mode, const DecideOptions& options = {});

// Same aggregation over precomputed scores (one per candidate).
Verdict decide_scored(const std::vector<Candidate>& candidates,
                      const std::vector<double>& scores, DecisionMode mode,
                      const DecideOptions& options = {});

}  // namespace tablefv

#endif  // TABLEFV_RANKER_H_
