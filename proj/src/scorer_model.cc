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
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tablefv/json_io.h"
#include "tablefv/ranker.h"

namespace tablefv {

using nlohmann::json;

namespace {

constexpr std::string_view kModelFormat = "tablefv-linear-scorer";

double sigmoid(double z) {
  double p = z >= 0 ? 1.0 / (1.0 + std::exp(-z))
                    : std::exp(z) / (1.0 + std::exp(z));
  return std::clamp(p, std::numeric_limits<double>::min(),
                    std::nextafter(1.0, 0.0));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view label_name(Label label) {
  return label == Label::kEntailed ? "ENTAILED" : "REFUTED";
}

Label label_from_bool(bool entailed) {
  return entailed ? Label::kEntailed : Label::kRefuted;
}

double ScorerModel::logit(const FeatureVector& features) const {
  double z = bias_;
  for (const auto& [id, v] : features) {
    if (auto it = weights_.find(id); it != weights_.end()) z += it->second * v;
  }
  return z;
}

double ScorerModel::score_features(const FeatureVector& features) const {
  return sigmoid(logit(features));
}

double ScorerModel::score(const LinkedStatement& statement,
                          const Program& program) const {
  return score_features(featurize(statement, program, use_caption_));
}

double ScorerModel::weight(std::uint32_t id) const {
  auto it = weights_.find(id);
  return it == weights_.end() ? 0.0 : it->second;
}

void ScorerModel::set_weight(std::uint32_t id, double w) {
  if (id >= kFeatureDim) throw std::out_of_range("feature id out of range");
  if (w == 0.0) {
    weights_.erase(id);
  } else {
    weights_[id] = w;
  }
}

std::string ScorerModel::to_json() const {
  json weights = json::object();
  for (const auto& [id, w] : weights_) weights[std::to_string(id)] = w;
  json j = {{"format", kModelFormat},
            {"version", kModelFormatVersion},
            {"dim", kFeatureDim},
            {"use_caption", use_caption_},
            {"bias", bias_},
            {"weights", weights}};
  return j.dump(1);
}

ScorerModel ScorerModel::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  }
  if (j.value("format", "") != kModelFormat) {
    throw std::invalid_argument("model: unrecognized format");
  }
  if (j.value("version", 0) != kModelFormatVersion) {
    throw std::invalid_argument("model: unsupported version");
  }
  if (j.value("dim", 0u) != kFeatureDim) {
    throw std::invalid_argument("model: feature dimension mismatch");
  }
  ScorerModel model(j.value("use_caption", false));
  model.bias_ = j.value("bias", 0.0);
  for (const auto& [key, w] : j.at("weights").items()) {
    model.set_weight(static_cast<std::uint32_t>(std::stoul(key)),
                     w.get<double>());
  }
  return model;
}

void ScorerModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json() << "\n";
}

ScorerModel ScorerModel::load(const std::string& path) {
  return from_json(read_file(path));
}

std::string dump_record_to_json(const DumpRecord& record) {
  json candidates = json::array();
  for (const auto& c : record.candidates) candidates.push_back(candidate_to_json(c));
  json j = {{"table_id", record.table_id},
            {"statement", record.statement},
            {"label", record.label == Label::kEntailed ? 1 : 0},
            {"linked", record.linked},
            {"candidates", candidates}};
  return j.dump();
}

DumpRecord dump_record_from_json(std::string_view line) {
  json j = json::parse(line);
  DumpRecord r;
  r.table_id = j.at("table_id").get<std::string>();
  r.statement = j.at("statement").get<std::string>();
  r.label = label_from_bool(j.at("label").get<int>() == 1);
  r.linked = j.at("linked").get<LinkedStatement>();
  for (const auto& c : j.at("candidates")) {
    r.candidates.push_back({parse_program(c.at("trace").get<std::string>()),
                            c.at("result").get<bool>()});
  }
  return r;
}

void write_dump(const std::string& path, const std::vector<DumpRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& r : records) out << dump_record_to_json(r) << "\n";
}

std::vector<DumpRecord> read_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<DumpRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(dump_record_from_json(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return out;
}

}  // namespace tablefv
