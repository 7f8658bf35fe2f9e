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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tablefv/ranker.h"

namespace tablefv {

namespace {

struct Example {
  FeatureVector features;
  double target = 0.0;
};

double log_loss(const ScorerModel& model, const std::vector<Example>& data) {
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : data) {
    double z = model.logit(ex.features);
    // log(1 + exp(-y z)) with y in {-1, +1}, computed stably.
    double m = ex.target > 0.5 ? -z : z;
    total += m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
  }
  return total / static_cast<double>(data.size());
}

std::vector<Example> examples_of(const std::vector<DumpRecord>& dump,
                                 const std::vector<std::size_t>& statements,
                                 bool use_caption) {
  std::vector<Example> out;
  for (std::size_t s : statements) {
    const DumpRecord& r = dump[s];
    for (const auto& c : r.candidates) {
      bool positive = label_from_bool(c.result) == r.label;
      out.push_back({featurize(r.linked, c.program, use_caption),
                     positive ? 1.0 : 0.0});
    }
  }
  return out;
}

}  // namespace

ScorerModel train(const std::vector<DumpRecord>& dump, const TrainConfig& config,
                  TrainReport* report) {
  std::size_t positives = 0;
  std::size_t total = 0;
  for (const auto& r : dump) {
    for (const auto& c : r.candidates) {
      positives += label_from_bool(c.result) == r.label ? 1 : 0;
      ++total;
    }
  }
  if (total == 0) throw DegenerateDump("dump has no candidates");
  if (positives == 0 || positives == total) {
    throw DegenerateDump("every candidate has the same weak label");
  }

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(dump.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t heldout = static_cast<std::size_t>(
      std::floor(config.heldout_fraction * static_cast<double>(dump.size())));
  if (heldout >= dump.size()) heldout = dump.size() - 1;
  std::vector<std::size_t> heldout_ids(order.begin(), order.begin() + heldout);
  std::vector<std::size_t> train_ids(order.begin() + heldout, order.end());
  std::sort(heldout_ids.begin(), heldout_ids.end());
  std::sort(train_ids.begin(), train_ids.end());

  std::vector<Example> train_set = examples_of(dump, train_ids, config.use_caption);
  std::vector<Example> heldout_set =
      examples_of(dump, heldout_ids, config.use_caption);

  ScorerModel model(config.use_caption);
  TrainReport local;
  local.train_statements = train_ids.size();
  local.heldout_statements = heldout_ids.size();
  local.train_examples = train_set.size();
  local.train_loss.push_back(log_loss(model, train_set));

  std::vector<std::size_t> visit(train_set.size());
  std::iota(visit.begin(), visit.end(), 0);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(visit.begin(), visit.end(), rng);
    double lr = config.learning_rate / (1.0 + 0.1 * epoch);
    for (std::size_t i : visit) {
      const Example& ex = train_set[i];
      double grad = model.score_features(ex.features) - ex.target;
      model.set_bias(model.bias() - lr * grad);
      for (const auto& [id, v] : ex.features) {
        double w = model.weight(id);
        model.set_weight(id, w - lr * (grad * v + config.l2 * w));
      }
    }
    local.train_loss.push_back(log_loss(model, train_set));
  }

  local.heldout_loss = log_loss(model, heldout_set);
  std::vector<DumpRecord> heldout_records;
  for (std::size_t s : heldout_ids) heldout_records.push_back(dump[s]);
  local.heldout_pairwise_accuracy =
      pairwise_accuracy(model, heldout_records).value_or(0.0);
  if (report != nullptr) *report = std::move(local);
  return model;
}

std::optional<double> pairwise_accuracy(const Scorer& scorer,
                                        const std::vector<DumpRecord>& dump) {
  std::size_t pairs = 0;
  std::size_t correct = 0;
  for (const auto& r : dump) {
    std::vector<double> pos, neg;
    for (const auto& c : r.candidates) {
      double s = scorer.score(r.linked, c.program);
      (label_from_bool(c.result) == r.label ? pos : neg).push_back(s);
    }
    for (double p : pos) {
      for (double n : neg) {
        ++pairs;
        correct += p > n ? 1 : 0;
      }
    }
  }
  if (pairs == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(pairs);
}

}  // namespace tablefv
