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

#include "tablefv/entity_linker.h"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace tablefv {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         static_cast<unsigned char>(c) >= 0x80;
}

int kind_rank(LinkKind kind) {
  switch (kind) {
    case LinkKind::kCell:
      return 0;
    case LinkKind::kColumn:
      return 1;
    case LinkKind::kCaption:
      return 2;
  }
  return 3;
}

std::vector<std::string> lemmas_of(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : tokenize(text)) out.push_back(std::move(token.lemma));
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::size_t end = i;

    // Trim edge punctuation; keep a leading sign on numbers.
    while (begin < end && !is_word_char(text[begin]) &&
           !((text[begin] == '-' || text[begin] == '+') && begin + 1 < end &&
             std::isdigit(static_cast<unsigned char>(text[begin + 1])))) {
      ++begin;
    }
    while (end > begin && !is_word_char(text[end - 1])) --end;
    if (end - begin >= 2 && text[end - 2] == '\'' &&
        (text[end - 1] == 's' || text[end - 1] == 'S')) {
      end -= 2;
    }
    if (begin >= end) continue;

    Token token;
    token.begin = begin;
    token.end = end;
    for (std::size_t k = begin; k < end; ++k) {
      token.word.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(text[k]))));
    }
    token.number = parse_number(token.word);
    if (!token.number) token.number = number_word_value(token.word);
    token.lemma =
        token.number ? format_number(*token.number) : lemmatize(token.word);
    tokens.push_back(std::move(token));
  }
  return tokens;
}

bool ngram_matches(const std::vector<std::string>& ngram,
                   const std::vector<std::string>& target) {
  if (ngram.empty() || ngram.size() > target.size()) return false;
  for (std::size_t start = 0; start < target.size(); ++start) {
    if (target[start] != ngram[0]) continue;
    std::size_t i = 1;
    std::size_t j = start + 1;
    while (i < ngram.size() && j < target.size()) {
      if (target[j] == ngram[i]) {
        ++i;
        ++j;
      } else if (target[j].size() == 1) {
        ++j;
      } else {
        break;
      }
    }
    if (i == ngram.size()) return true;
  }
  return false;
}

std::vector<LinkCandidate> link_candidates(const Table& table) {
  std::vector<LinkCandidate> out;
  out.reserve(table.row_count() * table.col_count() + table.col_count() + 1);
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < table.col_count(); ++c) {
      const Cell& cell = table.cell(r, c);
      out.push_back({{LinkKind::kCell, static_cast<int>(r), static_cast<int>(c)},
                     cell.text,
                     lemmas_of(cell.raw)});
    }
  }
  for (std::size_t c = 0; c < table.col_count(); ++c) {
    const auto& col = table.columns()[c];
    out.push_back({{LinkKind::kColumn, -1, static_cast<int>(c)},
                   col.name,
                   lemmas_of(col.raw_name)});
  }
  if (!table.caption().empty()) {
    out.push_back({{LinkKind::kCaption, -1, -1},
                   normalize_text(table.caption()),
                   lemmas_of(table.caption())});
  }
  return out;
}

std::vector<std::string> LinkedStatement::masked_tokens() const {
  std::vector<std::string> out;
  std::size_t next_link = 0;
  for (std::size_t i = 0; i < tokens.size();) {
    while (next_link < links.size() && links[next_link].end <= i) ++next_link;
    if (next_link < links.size() && links[next_link].begin == i &&
        links[next_link].target.kind == LinkKind::kCaption) {
      out.emplace_back(kCaptionPlaceholder);
      i = links[next_link].end;
      continue;
    }
    out.push_back(tokens[i].lemma);
    ++i;
  }
  return out;
}

std::vector<int> LinkedStatement::linked_columns() const {
  std::vector<int> cols;
  for (const auto& l : links) {
    if (l.target.kind != LinkKind::kCaption) cols.push_back(l.target.col);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

LinkedStatement link(std::string_view statement, const Table& table,
                     const LinkerOptions& options) {
  LinkedStatement out;
  out.original = std::string(statement);
  out.tokens = tokenize(statement);
  out.caption_tokens = lemmas_of(table.caption());
  for (const auto& col : table.columns()) out.column_names.push_back(col.name);

  const auto candidates = link_candidates(table);
  const auto& tokens = out.tokens;
  const std::size_t n = tokens.size();

  std::size_t i = 0;
  while (i < n) {
    bool linked = false;
    std::size_t longest = std::min(options.max_ngram, n - i);
    for (std::size_t len = longest; len >= 1 && !linked; --len) {
      std::vector<std::string> ngram;
      bool has_content = false;
      bool numeric_only = true;
      for (std::size_t k = i; k < i + len; ++k) {
        ngram.push_back(tokens[k].lemma);
        has_content |= !is_stopword(tokens[k].word);
        numeric_only &= tokens[k].number.has_value();
      }
      if (!has_content) continue;
      bool content_edges = !is_stopword(tokens[i].word) &&
                           !is_stopword(tokens[i + len - 1].word);

      std::string surface(statement.substr(
          tokens[i].begin, tokens[i + len - 1].end - tokens[i].begin));
      std::string surface_norm = normalize_text(surface);

      const LinkCandidate* best = nullptr;
      std::tuple<std::size_t, int> best_key{};
      for (const auto& cand : candidates) {
        if (cand.target.kind != LinkKind::kCaption && !content_edges) continue;
        // Bare numbers only bind to cells and names they fully cover.
        if (numeric_only ? ngram != cand.lemmas
                         : !ngram_matches(ngram, cand.lemmas)) {
          continue;
        }
        std::tuple<std::size_t, int> key{edit_distance(surface_norm, cand.text),
                                         kind_rank(cand.target.kind)};
        // Candidates are visited in row-major order, so strict comparison
        // keeps the earliest among exact ties.
        if (best == nullptr || key < best_key) {
          best = &cand;
          best_key = key;
        }
      }
      if (best == nullptr) continue;

      out.links.push_back({i, i + len, best->target, std::move(surface)});
      linked = true;
      i += len;
    }
    if (!linked) ++i;
  }

  // Masked text: caption spans replaced by the placeholder.
  std::size_t cursor = 0;
  for (const auto& l : out.links) {
    if (l.target.kind != LinkKind::kCaption) continue;
    std::size_t begin = tokens[l.begin].begin;
    std::size_t end = tokens[l.end - 1].end;
    out.masked_text.append(statement.substr(cursor, begin - cursor));
    out.masked_text.append(kCaptionPlaceholder);
    cursor = end;
  }
  out.masked_text.append(statement.substr(cursor));

  // Seeds.
  std::vector<bool> blocked(n, false);
  for (const auto& l : out.links) {
    bool numeric_only = true;
    for (std::size_t k = l.begin; k < l.end; ++k) {
      numeric_only &= tokens[k].number.has_value();
    }
    if (l.target.kind == LinkKind::kCaption || !numeric_only) {
      for (std::size_t k = l.begin; k < l.end; ++k) blocked[k] = true;
    }
    if (l.target.kind == LinkKind::kCell && !numeric_only) {
      out.strings.push_back(
          table.cell(static_cast<std::size_t>(l.target.row),
                     static_cast<std::size_t>(l.target.col))
              .text);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (tokens[k].number && !blocked[k]) {
      out.numbers.push_back({k, *tokens[k].number});
    }
  }
  return out;
}

}  // namespace tablefv
