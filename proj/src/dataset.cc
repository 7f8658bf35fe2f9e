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

#include <fstream>
#include <sstream>

#include "tablefv/harness.h"

namespace tablefv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<fs::path> locate(const fs::path& root, const fs::path& name) {
  for (const fs::path& dir : {root, root / "data", root / "collected_data"}) {
    fs::path candidate = dir / name;
    if (fs::exists(candidate)) return candidate;
  }
  return std::nullopt;
}

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(DataErrorKind::kMissingFile, "cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(DataErrorKind::kMalformed,
                    path.string() + ": " + e.what());
  }
}

struct Source {
  json records;
  Channel channel;
};

}  // namespace

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::kSimple:
      return "simple";
    case Channel::kComplex:
      return "complex";
    case Channel::kUnknown:
      return "unknown";
  }
  return "unknown";
}

const Table& Dataset::table(const std::string& id) const {
  auto it = tables.find(id);
  if (it == tables.end() || it->second == nullptr) {
    throw DataError(DataErrorKind::kMissingTable, "table not loaded: " + id);
  }
  return *it->second;
}

Dataset load_dataset(const fs::path& root, std::string_view split,
                     const LoadOptions& options) {
  std::string id_file = std::string(split) + "_id.json";
  auto ids_path = locate(root, id_file);
  if (!ids_path) {
    throw DataError(DataErrorKind::kMissingFile,
                    id_file + " not found under " + root.string());
  }
  json ids = read_json(*ids_path);
  if (!ids.is_array()) {
    throw DataError(DataErrorKind::kMalformed, id_file + " must be a list");
  }

  std::vector<Source> sources;
  if (auto p = locate(root, "r1_training_all.json")) {
    sources.push_back({read_json(*p), Channel::kSimple});
  }
  if (auto p = locate(root, "r2_training_all.json")) {
    sources.push_back({read_json(*p), Channel::kComplex});
  }
  if (sources.empty()) {
    if (auto p = locate(root, "full_cleaned.json")) {
      sources.push_back({read_json(*p), Channel::kUnknown});
    }
  }
  if (sources.empty()) {
    throw DataError(DataErrorKind::kMissingFile,
                    "no statement files found under " + root.string());
  }

  Dataset out;
  for (const auto& id_json : ids) {
    if (!id_json.is_string()) {
      throw DataError(DataErrorKind::kMalformed, id_file + ": non-string id");
    }
    const std::string id = id_json.get<std::string>();
    bool found = false;
    std::string caption;
    for (const Source& source : sources) {
      auto it = source.records.find(id);
      if (it == source.records.end()) continue;
      found = true;
      const json& record = *it;
      if (!record.is_array() || record.size() < 2 || !record[0].is_array() ||
          !record[1].is_array()) {
        throw DataError(DataErrorKind::kMalformed, "bad record for " + id);
      }
      if (record[0].size() != record[1].size()) {
        throw DataError(DataErrorKind::kLabelArityMismatch,
                        id + ": " + std::to_string(record[0].size()) +
                            " statements, " + std::to_string(record[1].size()) +
                            " labels");
      }
      caption = record.size() > 2 && record[2].is_string()
                    ? record[2].get<std::string>()
                    : "";
      for (std::size_t i = 0; i < record[0].size(); ++i) {
        int label = record[1][i].get<int>();
        if (label != 0 && label != 1) {
          throw DataError(DataErrorKind::kMalformed,
                          id + ": label must be 0 or 1");
        }
        out.instances.push_back({id, record[0][i].get<std::string>(),
                                 label_from_bool(label == 1), source.channel,
                                 caption});
      }
    }
    if (!found) {
      throw DataError(DataErrorKind::kMalformed, "no statements for " + id);
    }

    if (out.tables.count(id) > 0) continue;
    auto table_path = locate(root, fs::path("all_csv") / id);
    if (!table_path) {
      throw DataError(DataErrorKind::kMissingTable, "missing table " + id);
    }
    if (options.load_tables) {
      ParseOptions parse;
      parse.delimiter = options.delimiter;
      parse.table_id = id;
      parse.caption = caption;
      parse.strict_dims = options.strict_dims;
      try {
        out.tables[id] = std::make_shared<const Table>(
            load_table_file(table_path->string(), parse));
      } catch (const TableError& e) {
        if (!options.lenient) {
          throw DataError(DataErrorKind::kMalformed, id + ": " + e.what());
        }
        out.tables[id] = nullptr;
        out.table_errors[id] = e.what();
      }
    } else {
      out.tables[id] = nullptr;
    }
  }
  return out;
}

}  // namespace tablefv
