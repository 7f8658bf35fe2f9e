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

#include "link_checker.h"

#include <algorithm>
#include <optional>
#include <tuple>

namespace tablefv::testing {

namespace {

struct Target {
  LinkTarget target;
  std::string text;
  std::vector<std::string> lemmas;
  int rank = 0;
};

std::vector<std::string> lemmas(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text)) out.push_back(t.lemma);
  return out;
}

std::vector<Target> targets(const Table& table) {
  std::vector<Target> out;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < table.col_count(); ++c) {
      out.push_back({{LinkKind::kCell, int(r), int(c)},
                     table.cell(r, c).text,
                     lemmas(table.cell(r, c).raw),
                     0});
    }
  }
  for (std::size_t c = 0; c < table.col_count(); ++c) {
    out.push_back({{LinkKind::kColumn, -1, int(c)},
                   table.columns()[c].name,
                   lemmas(table.columns()[c].raw_name),
                   1});
  }
  if (!table.caption().empty()) {
    out.push_back({{LinkKind::kCaption, -1, -1},
                   normalize_text(table.caption()),
                   lemmas(table.caption()),
                   2});
  }
  return out;
}

// Targets the span [b, e) may bind to, under the linker's gating rules.
std::vector<const Target*> matching(const LinkedStatement& linked,
                                    const std::vector<Target>& all,
                                    std::size_t b, std::size_t e) {
  const auto& tokens = linked.tokens;
  std::vector<std::string> ngram;
  bool content = false;
  bool numeric_only = true;
  for (std::size_t k = b; k < e; ++k) {
    ngram.push_back(tokens[k].lemma);
    content |= !is_stopword(tokens[k].word);
    numeric_only &= tokens[k].number.has_value();
  }
  std::vector<const Target*> out;
  if (!content) return out;
  bool edges = !is_stopword(tokens[b].word) && !is_stopword(tokens[e - 1].word);
  for (const Target& t : all) {
    if (t.target.kind != LinkKind::kCaption && !edges) continue;
    bool hit = numeric_only ? ngram == t.lemmas
                            : brute_ngram_matches(ngram, t.lemmas);
    if (hit) out.push_back(&t);
  }
  return out;
}

std::string describe(std::size_t b, std::size_t e) {
  return "[" + std::to_string(b) + "," + std::to_string(e) + ")";
}

}  // namespace

bool brute_ngram_matches(const std::vector<std::string>& ngram,
                         const std::vector<std::string>& target) {
  if (ngram.empty()) return false;
  for (std::size_t s = 0; s < target.size(); ++s) {
    for (std::size_t t = s; t < target.size(); ++t) {
      std::vector<std::size_t> inner;
      for (std::size_t k = s + 1; k < t; ++k) {
        if (target[k].size() == 1) inner.push_back(k);
      }
      if (inner.size() > 12) continue;
      for (std::uint32_t drop = 0; drop < (1u << inner.size()); ++drop) {
        std::vector<std::string> window;
        for (std::size_t k = s; k <= t; ++k) {
          auto it = std::find(inner.begin(), inner.end(), k);
          if (it != inner.end() && (drop >> (it - inner.begin())) & 1u) {
            continue;
          }
          window.push_back(target[k]);
        }
        if (window == ngram) return true;
      }
    }
  }
  return false;
}

std::vector<std::string> check_links(const LinkedStatement& linked,
                                     const Table& table) {
  std::vector<std::string> problems;
  const auto all = targets(table);
  const std::size_t n = linked.tokens.size();

  std::vector<int> owner(n, -1);
  std::size_t last_end = 0;
  for (std::size_t i = 0; i < linked.links.size(); ++i) {
    const EntityLink& l = linked.links[i];
    if (l.begin >= l.end || l.end > n || l.begin < last_end) {
      problems.push_back("link " + describe(l.begin, l.end) +
                         " overlaps or is out of order");
      return problems;
    }
    last_end = l.end;
    for (std::size_t k = l.begin; k < l.end; ++k) owner[k] = int(i);
  }

  // Greedy scan: at each start, the longest matching span is taken.
  std::size_t i = 0;
  while (i < n) {
    std::optional<std::size_t> longest;
    for (std::size_t e = n; e > i; --e) {
      if (!matching(linked, all, i, e).empty()) {
        longest = e;
        break;
      }
    }
    if (!longest) {
      if (owner[i] != -1) {
        problems.push_back("token " + std::to_string(i) +
                           " linked though no span from it matches");
      }
      ++i;
      continue;
    }
    if (owner[i] == -1 || linked.links[owner[i]].begin != i ||
        linked.links[owner[i]].end != *longest) {
      problems.push_back("expected link " + describe(i, *longest));
      return problems;
    }

    const EntityLink& l = linked.links[owner[i]];
    std::string surface = normalize_text(linked.original.substr(
        linked.tokens[l.begin].begin,
        linked.tokens[l.end - 1].end - linked.tokens[l.begin].begin));
    const Target* best = nullptr;
    std::tuple<std::size_t, int> best_key{};
    for (const Target* t : matching(linked, all, l.begin, l.end)) {
      std::tuple<std::size_t, int> key{edit_distance(surface, t->text),
                                       t->rank};
      if (best == nullptr || key < best_key) {
        best = t;
        best_key = key;
      }
    }
    if (!(best->target == l.target)) {
      problems.push_back("link " + describe(l.begin, l.end) +
                         " is not the closest target");
    }
    i = *longest;
  }
  return problems;
}

std::string random_statement(Rng& rng, const Table& table) {
  static const std::vector<std::string> kFiller = {
      "the", "of", "in", "there", "are", "was", "more", "than", "highest",
      "not", "only", "three", "2", "first", "team", "score", "a", "and"};
  std::vector<std::string> words;
  std::size_t pieces = uniform(rng, 1, 6);
  for (std::size_t p = 0; p < pieces; ++p) {
    switch (uniform(rng, 0, 3)) {
      case 0: {
        const Cell& cell = table.cell(uniform(rng, 0, table.row_count() - 1),
                                      uniform(rng, 0, table.col_count() - 1));
        std::vector<Token> tokens = tokenize(cell.raw);
        if (tokens.empty()) break;
        // A random contiguous piece of the cell.
        std::size_t b = uniform(rng, 0, tokens.size() - 1);
        std::size_t e = uniform(rng, b, tokens.size() - 1);
        for (std::size_t k = b; k <= e; ++k) words.push_back(tokens[k].word);
        break;
      }
      case 1:
        words.push_back(
            table.columns()[uniform(rng, 0, table.col_count() - 1)].name);
        break;
      default:
        words.push_back(pick(rng, kFiller));
        break;
    }
  }
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace tablefv::testing
