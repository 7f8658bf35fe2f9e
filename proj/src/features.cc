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
#include <string>

#include "tablefv/ranker.h"

namespace tablefv {

namespace {

void program_features(const Expr& e, const LinkedStatement& statement,
                      std::vector<std::string>& fns,
                      std::vector<std::string>& out) {
  if (e.kind != Expr::Kind::kCall) return;
  fns.push_back(e.fn->name);
  out.push_back("p1:" + e.fn->name);
  for (const auto& arg : e.args) {
    switch (arg->kind) {
      case Expr::Kind::kCall:
        out.push_back("p2:" + e.fn->name + ">" + arg->fn->name);
        program_features(*arg, statement, fns, out);
        break;
      case Expr::Kind::kCol: {
        bool linked = false;
        for (int c : statement.linked_columns()) {
          auto idx = static_cast<std::size_t>(c);
          if (idx < statement.column_names.size() &&
              statement.column_names[idx] == arg->text) {
            linked = true;
          }
        }
        out.push_back(linked ? "col_linked=1" : "col_linked=0");
        break;
      }
      case Expr::Kind::kStr:
        out.push_back("str_leaf");
        break;
      case Expr::Kind::kNum:
        out.push_back("num_leaf");
        break;
      case Expr::Kind::kRoot:
        break;
    }
  }
}

}  // namespace

std::uint32_t hash_feature(std::string_view name) {
  std::uint32_t h = 2166136261u;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 16777619u;
  }
  return h & (kFeatureDim - 1);
}

std::vector<std::string> feature_names(const LinkedStatement& statement,
                                       const Program& program,
                                       bool use_caption) {
  std::vector<std::string> out;
  const std::vector<std::string> tokens = statement.masked_tokens();
  for (const auto& t : tokens) out.push_back("s1:" + t);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    out.push_back("s2:" + tokens[i] + "_" + tokens[i + 1]);
  }

  std::vector<std::string> fns;
  const Expr& root = program.root();
  if (root.kind == Expr::Kind::kCall) out.push_back("root=" + root.fn->name);
  program_features(root, statement, fns, out);
  std::sort(fns.begin(), fns.end());
  fns.erase(std::unique(fns.begin(), fns.end()), fns.end());

  for (const auto& t : tokens) {
    if (is_stopword(t)) continue;
    for (const auto& fn : fns) out.push_back("x:" + t + "|" + fn);
  }
  out.push_back("depth=" + std::to_string(program.size()));

  if (use_caption) {
    for (const auto& t : statement.caption_tokens) {
      out.push_back("c1:" + t);
      for (const auto& fn : fns) out.push_back("cx:" + t + "|" + fn);
    }
  }
  return out;
}

FeatureVector featurize(const LinkedStatement& statement,
                        const Program& program, bool use_caption) {
  FeatureVector out;
  for (const auto& name : feature_names(statement, program, use_caption)) {
    out.emplace_back(hash_feature(name), 1.0);
  }
  std::sort(out.begin(), out.end());
  FeatureVector merged;
  for (const auto& [id, v] : out) {
    if (!merged.empty() && merged.back().first == id) {
      merged.back().second += v;
    } else {
      merged.emplace_back(id, v);
    }
  }
  return merged;
}

}  // namespace tablefv
