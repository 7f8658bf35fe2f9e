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

#include <cmath>
#include <stdexcept>

#include "tablefv/ranker.h"

namespace tablefv {

std::string_view mode_name(DecisionMode mode) {
  switch (mode) {
    case DecisionMode::kVoting:
      return "voting";
    case DecisionMode::kWeighted:
      return "weighted";
    case DecisionMode::kRanking:
      return "ranking";
  }
  return "voting";
}

DecisionMode parse_mode(std::string_view name) {
  if (name == "voting") return DecisionMode::kVoting;
  if (name == "weighted") return DecisionMode::kWeighted;
  if (name == "ranking") return DecisionMode::kRanking;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

Verdict decide_scored(const std::vector<Candidate>& candidates,
                      const std::vector<double>& scores, DecisionMode mode,
                      const DecideOptions& options) {
  Verdict verdict;
  if (candidates.empty()) return verdict;

  switch (mode) {
    case DecisionMode::kVoting: {
      long entailed = 0;
      for (const auto& c : candidates) entailed += c.result ? 1 : 0;
      long refuted = static_cast<long>(candidates.size()) - entailed;
      verdict.label = entailed == refuted
                          ? options.tie_label
                          : label_from_bool(entailed > refuted);
      verdict.confidence = static_cast<double>(std::labs(entailed - refuted)) /
                           static_cast<double>(candidates.size());
      break;
    }
    case DecisionMode::kWeighted: {
      if (scores.size() != candidates.size()) {
        throw std::invalid_argument("one score per candidate required");
      }
      double sum = 0.0;
      double mass = 0.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        sum += scores[i] * (candidates[i].result ? 1.0 : -1.0);
        mass += scores[i];
      }
      verdict.label = sum == 0.0 ? options.tie_label : label_from_bool(sum > 0);
      verdict.confidence = mass > 0 ? std::fabs(sum) / mass : 0.0;
      break;
    }
    case DecisionMode::kRanking: {
      if (scores.size() != candidates.size()) {
        throw std::invalid_argument("one score per candidate required");
      }
      std::size_t best = 0;
      for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (scores[i] > scores[best]) best = i;
      }
      verdict.label = label_from_bool(candidates[best].result);
      verdict.confidence = scores[best];
      verdict.rationale = candidates[best].program;
      break;
    }
  }
  return verdict;
}

Verdict decide(const std::vector<Candidate>& candidates,
               const LinkedStatement& statement, const Scorer* scorer,
               DecisionMode mode, const DecideOptions& options) {
  if (mode == DecisionMode::kVoting) {
    return decide_scored(candidates, {}, mode, options);
  }
  if (scorer == nullptr) {
    throw ModelMissing(std::string(mode_name(mode)) + " mode needs a model");
  }
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& c : candidates) {
    scores.push_back(scorer->score(statement, c.program));
  }
  return decide_scored(candidates, scores, mode, options);
}

}  // namespace tablefv
