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

#include "tablefv/json_io.h"

#include <stdexcept>

namespace tablefv {

using nlohmann::json;

std::string_view link_kind_name(LinkKind kind) {
  switch (kind) {
    case LinkKind::kCell:
      return "cell";
    case LinkKind::kColumn:
      return "column";
    case LinkKind::kCaption:
      return "caption";
  }
  return "cell";
}

namespace {

LinkKind parse_link_kind(const std::string& name) {
  if (name == "cell") return LinkKind::kCell;
  if (name == "column") return LinkKind::kColumn;
  if (name == "caption") return LinkKind::kCaption;
  throw std::invalid_argument("unknown link kind '" + name + "'");
}

}  // namespace

void to_json(json& j, const Token& token) {
  j = json{{"word", token.word},
           {"lemma", token.lemma},
           {"begin", token.begin},
           {"end", token.end}};
  if (token.number) j["number"] = *token.number;
}

void from_json(const json& j, Token& token) {
  token.word = j.at("word").get<std::string>();
  token.lemma = j.at("lemma").get<std::string>();
  token.begin = j.at("begin").get<std::size_t>();
  token.end = j.at("end").get<std::size_t>();
  token.number.reset();
  if (j.contains("number")) token.number = j["number"].get<double>();
}

void to_json(json& j, const EntityLink& link) {
  j = json{{"begin", link.begin},
           {"end", link.end},
           {"kind", link_kind_name(link.target.kind)},
           {"row", link.target.row},
           {"col", link.target.col},
           {"surface", link.surface}};
}

void from_json(const json& j, EntityLink& link) {
  link.begin = j.at("begin").get<std::size_t>();
  link.end = j.at("end").get<std::size_t>();
  link.target.kind = parse_link_kind(j.at("kind").get<std::string>());
  link.target.row = j.at("row").get<int>();
  link.target.col = j.at("col").get<int>();
  link.surface = j.at("surface").get<std::string>();
}

void to_json(json& j, const LinkedStatement& linked) {
  json numbers = json::array();
  for (const auto& n : linked.numbers) {
    numbers.push_back({{"token", n.token}, {"value", n.value}});
  }
  j = json{{"original", linked.original},
           {"tokens", linked.tokens},
           {"links", linked.links},
           {"masked_text", linked.masked_text},
           {"numbers", numbers},
           {"strings", linked.strings},
           {"caption_tokens", linked.caption_tokens},
           {"column_names", linked.column_names}};
}

void from_json(const json& j, LinkedStatement& linked) {
  linked.original = j.at("original").get<std::string>();
  linked.tokens = j.at("tokens").get<std::vector<Token>>();
  linked.links = j.at("links").get<std::vector<EntityLink>>();
  linked.masked_text = j.at("masked_text").get<std::string>();
  linked.numbers.clear();
  for (const auto& n : j.at("numbers")) {
    linked.numbers.push_back(
        {n.at("token").get<std::size_t>(), n.at("value").get<double>()});
  }
  linked.strings = j.at("strings").get<std::vector<std::string>>();
  linked.caption_tokens = j.at("caption_tokens").get<std::vector<std::string>>();
  linked.column_names = j.value("column_names", std::vector<std::string>{});
}

json candidate_to_json(const Candidate& candidate) {
  return {{"trace", candidate.program.trace()}, {"result", candidate.result}};
}

json stats_to_json(const SearchStats& stats) {
  return {{"expanded", stats.expanded},   {"deduped", stats.deduped},
          {"errored", stats.errored},     {"discarded", stats.discarded},
          {"pruned", stats.pruned},       {"timed_out", stats.timed_out},
          {"truncated", stats.truncated}};
}

}  // namespace tablefv
