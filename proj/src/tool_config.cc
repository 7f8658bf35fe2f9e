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

using nlohmann::json;

ToolConfig parse_tool_config(std::string_view json_text) {
  ToolConfig config;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  try {
    if (j.contains("search")) {
      const json& s = j["search"];
      config.search.max_step = s.value("max_step", config.search.max_step);
      config.search.max_traces = s.value("max_traces", config.search.max_traces);
      config.search.trigger_pruning =
          s.value("trigger_pruning", config.search.trigger_pruning);
      config.search.dedupe = s.value("dedupe", config.search.dedupe);
      if (config.search.max_step < 1 || config.search.max_traces < 1) {
        throw std::invalid_argument("config: max_step and max_traces must be >= 1");
      }
    }
    if (j.contains("linearization")) {
      const json& l = j["linearization"];
      if (l.contains("mode")) {
        config.linearization.mode = parse_linearize_mode(l["mode"].get<std::string>());
      }
      if (l.contains("scan")) config.linearization.scan = parse_scan(l["scan"].get<std::string>());
      if (l.contains("order")) {
        config.linearization.order = parse_order(l["order"].get<std::string>());
      }
    }
    if (j.contains("evaluate")) {
      const json& e = j["evaluate"];
      if (e.contains("mode")) config.mode = parse_mode(e["mode"].get<std::string>());
      config.timeout = std::chrono::milliseconds(
          e.value("timeout_ms", static_cast<long>(config.timeout.count())));
      config.threads = e.value("threads", config.threads);
    }
    if (j.contains("paths")) {
      const json& p = j["paths"];
      config.data_root = p.value("data_root", config.data_root);
      config.model_path = p.value("model", config.model_path);
    }
    if (j.contains("delimiter")) {
      std::string d = j["delimiter"].get<std::string>();
      if (d.size() != 1) throw std::invalid_argument("config: delimiter must be one character");
      config.delimiter = d[0];
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config;
}

ToolConfig load_tool_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tool_config(ss.str());
}

}  // namespace tablefv
