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

// JSON conversions for linker output and search candidates.

#ifndef TABLEFV_JSON_IO_H_
#define TABLEFV_JSON_IO_H_

#include <json.hpp>

#include "tablefv/entity_linker.h"
#include "tablefv/lpa_search.h"

namespace tablefv {

void to_json(nlohmann::json& j, const Token& token);
void from_json(const nlohmann::json& j, Token& token);
void to_json(nlohmann::json& j, const EntityLink& link);
void from_json(const nlohmann::json& j, EntityLink& link);
void to_json(nlohmann::json& j, const LinkedStatement& linked);
void from_json(const nlohmann::json& j, LinkedStatement& linked);

std::string_view link_kind_name(LinkKind kind);

// {"trace": ..., "result": bool}
nlohmann::json candidate_to_json(const Candidate& candidate);
nlohmann::json stats_to_json(const SearchStats& stats);

}  // namespace tablefv

#endif  // TABLEFV_JSON_IO_H_
