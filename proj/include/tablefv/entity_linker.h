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

#ifndef TABLEFV_ENTITY_LINKER_H_
#define TABLEFV_ENTITY_LINKER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablefv/table.h"

namespace tablefv {

// Reserved sentinel that replaces caption-linked phrases.
inline constexpr std::string_view kCaptionPlaceholder = "[CAPTION]";

// Suffix-rule normal form for plural and verb inflections. Rules are applied
// until none fires, so the result is a fixed point. Numeric tokens are
// returned unchanged.
std::string lemmatize(std::string_view token);

// Maps number words ("three") and ordinals ("first", "3rd") to their value.
std::optional<double> number_word_value(std::string_view word);

bool is_stopword(std::string_view word);

// Byte-level Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

struct Token {
  std::string word;   // lowercased surface with edge punctuation removed
  std::string lemma;  // number-normalized lemma used for matching
  std::size_t begin = 0;  // byte offsets into the original string
  std::size_t end = 0;
  std::optional<double> number;  // set for numerals and number words

  bool operator==(const Token&) const = default;
};

// Splits on whitespace, strips edge punctuation and possessive "'s", and
// attaches lemmas and numeric values.
std::vector<Token> tokenize(std::string_view text);

enum class LinkKind { kCell, kColumn, kCaption };

struct LinkTarget {
  LinkKind kind = LinkKind::kCell;
  int row = -1;  // kCell only
  int col = -1;  // kCell and kColumn

  bool operator==(const LinkTarget&) const = default;
};

struct EntityLink {
  std::size_t begin = 0;  // token range [begin, end)
  std::size_t end = 0;
  LinkTarget target;
  std::string surface;  // original statement text covered by the span

  bool operator==(const EntityLink&) const = default;
};

struct NumberMention {
  std::size_t token = 0;
  double value = 0.0;

  bool operator==(const NumberMention&) const = default;
};

struct LinkedStatement {
  std::string original;
  std::vector<Token> tokens;
  std::vector<EntityLink> links;  // ordered, non-overlapping
  std::string masked_text;
  // Numerals outside text links. These seed the number cache.
  std::vector<NumberMention> numbers;
  // Normalized cell text for each cell link that contains a non-numeric
  // token. These seed the string cache.
  std::vector<std::string> strings;
  std::vector<std::string> caption_tokens;
  // Normalized column names of the linked table, indexed like its columns.
  std::vector<std::string> column_names;

  // Token lemmas with caption spans collapsed into the placeholder.
  std::vector<std::string> masked_tokens() const;
  // Columns touched by a cell or column link, ascending.
  std::vector<int> linked_columns() const;

  bool operator==(const LinkedStatement&) const = default;
};

struct LinkerOptions {
  // Longest n-gram considered. Statements are short, so the default is
  // effectively unbounded.
  std::size_t max_ngram = 16;
};

// True when `ngram` occurs contiguously in `target`, where single-letter
// target tokens (initials) may be skipped between matched tokens.
bool ngram_matches(const std::vector<std::string>& ngram,
                   const std::vector<std::string>& target);

// A linkable table element with its lemma sequence.
struct LinkCandidate {
  LinkTarget target;
  std::string text;  // normalized text compared by edit distance
  std::vector<std::string> lemmas;
};

// Cells in row-major order, then column names, then the caption.
std::vector<LinkCandidate> link_candidates(const Table& table);

// Greedy left-to-right longest match over lemmatized n-grams. Among
// candidates of equal span length the one with minimum edit distance to the
// surface wins; remaining ties prefer cells, then columns, then the caption,
// then earlier position. An n-gram made only of numbers binds only to a
// cell or name it covers entirely.
LinkedStatement link(std::string_view statement, const Table& table,
                     const LinkerOptions& options = {});

}  // namespace tablefv

#endif  // TABLEFV_ENTITY_LINKER_H_
