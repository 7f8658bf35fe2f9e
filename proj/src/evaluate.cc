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
#include <atomic>
#include <cstdio>
#include <set>
#include <thread>

#include "tablefv/category_lexicon_data.h"
#include "tablefv/harness.h"

namespace tablefv {

using nlohmann::json;

namespace {

using CategoryMap = std::map<std::string, std::set<std::string>, std::less<>>;

const CategoryMap& category_words() {
  static const CategoryMap kMap = [] {
    CategoryMap map;
    json j = json::parse(kCategoryLexiconJson);
    for (const auto& [tag, words] : j.at("categories").items()) {
      for (const auto& w : words) map[tag].insert(w.get<std::string>());
    }
    return map;
  }();
  return kMap;
}

json tally_json(const Tally& t) {
  return {{"total", t.total}, {"correct", t.correct}, {"accuracy", t.accuracy()}};
}

void tally(Tally& t, bool correct) {
  ++t.total;
  t.correct += correct ? 1 : 0;
}

std::string row(std::string_view name, const Tally& t) {
  char buffer[128];
  std::snprintf(buffer, sizeof(buffer), "  %-14.*s %8zu %8zu %8.4f\n",
                static_cast<int>(name.size()), name.data(), t.total, t.correct,
                t.accuracy());
  return buffer;
}

}  // namespace

std::vector<std::string> categorize(std::string_view statement) {
  std::set<std::string> tags;
  for (const Token& token : tokenize(statement)) {
    for (const auto& [tag, words] : category_words()) {
      if (words.count(token.word) > 0 || words.count(token.lemma) > 0) {
        tags.insert(tag);
      }
    }
    if (token.word.size() > 3 && token.word.ends_with("n't")) tags.insert("negation");
    if (is_ordinal_word(token.word)) tags.insert("ordinal");
  }
  if (tags.empty()) return {"none"};
  return {tags.begin(), tags.end()};
}

PipelineOutput run_pipeline(const Table& table, std::string_view statement,
                            const PipelineConfig& config) {
  PipelineOutput out;
  out.linked = link(statement, table, config.linker);
  SearchConfig search_config = config.search;
  if (search_config.time_budget.count() <= 0) search_config.time_budget = config.timeout;
  out.candidates = search(table, out.linked, search_config);
  out.timed_out = out.candidates.stats.timed_out;
  if (out.timed_out) {
    out.verdict = Verdict{};
    return out;
  }
  out.verdict = decide(out.candidates.items, out.linked, config.scorer,
                       config.mode, config.decide);
  return out;
}

EvalReport build_report(const std::vector<Instance>& instances,
                        const std::vector<InstanceResult>& results) {
  EvalReport report;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    const InstanceResult& res = results[i];
    bool correct = !res.failed && res.predicted == inst.label;
    tally(report.overall, correct);
    tally(report.by_channel[std::string(channel_name(inst.channel))], correct);
    for (const auto& tag : categorize(inst.statement)) {
      tally(report.by_category[tag], correct);
    }
    int gold = inst.label == Label::kEntailed ? 1 : 0;
    int predicted = res.predicted == Label::kEntailed ? 1 : 0;
    ++report.confusion[gold][predicted];
    report.timeouts += res.timed_out ? 1 : 0;
    report.failures += res.failed ? 1 : 0;
  }
  return report;
}

EvalReport evaluate(const Dataset& dataset, const PipelineConfig& config,
                    std::vector<InstanceResult>* details) {
  const auto& instances = dataset.instances;
  std::vector<InstanceResult> results(instances.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const Instance& inst = instances[i];
      InstanceResult& res = results[i];
      auto start = std::chrono::steady_clock::now();
      try {
        PipelineOutput out =
            run_pipeline(dataset.table(inst.table_id), inst.statement, config);
        res.predicted = out.verdict.label;
        res.timed_out = out.timed_out;
        res.candidates = out.candidates.items.size();
      } catch (const std::exception& e) {
        res.failed = true;
        res.error = e.what();
      }
      res.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };

  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, instances.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  EvalReport report = build_report(instances, results);
  if (details != nullptr) *details = std::move(results);
  return report;
}

json EvalReport::to_json() const {
  json channels = json::object();
  for (const auto& [name, t] : by_channel) channels[name] = tally_json(t);
  json categories = json::object();
  for (const auto& [name, t] : by_category) categories[name] = tally_json(t);
  return {{"overall", tally_json(overall)},
          {"by_channel", channels},
          {"by_category", categories},
          {"confusion",
           {{"gold_entailed", {{"predicted_entailed", confusion[1][1]},
                               {"predicted_refuted", confusion[1][0]}}},
            {"gold_refuted", {{"predicted_entailed", confusion[0][1]},
                              {"predicted_refuted", confusion[0][0]}}}}},
          {"timeouts", timeouts},
          {"failures", failures}};
}

std::string EvalReport::to_text() const {
  std::string out = "  group             total  correct accuracy\n";
  out += row("overall", overall);
  for (const auto& [name, t] : by_channel) out += row("channel:" + name, t);
  for (const auto& [name, t] : by_category) out += row(name, t);
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer),
                "confusion (gold x predicted):\n"
                "  ENTAILED  -> ENTAILED %zu, REFUTED %zu\n"
                "  REFUTED   -> ENTAILED %zu, REFUTED %zu\n"
                "timeouts %zu, failures %zu\n",
                confusion[1][1], confusion[1][0], confusion[0][1],
                confusion[0][0], timeouts, failures);
  out += buffer;
  return out;
}

}  // namespace tablefv
