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
#include <array>
#include <charconv>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "tablefv/entity_linker.h"

namespace tablefv {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), is_vowel);
}

bool lemmatizable(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= 'a' && c <= 'z') || c == '-';
         });
}

// "runn" -> "run", but keep "ll", "ss", "zz" ("call", "pass").
std::string undouble(std::string stem) {
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
  }
  return stem;
}

// One rewrite step. Every rule strictly shortens the word, so iterating to a
// fixed point terminates.
std::optional<std::string> apply_rule(const std::string& w) {
  std::size_t n = w.size();
  if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, n - 2);
  if (n > 4 && (ends_with(w, "ches") || ends_with(w, "shes") ||
                ends_with(w, "xes") || ends_with(w, "zes"))) {
    return w.substr(0, n - 2);
  }
  if (n > 3 && ends_with(w, "s") && !ends_with(w, "ss") &&
      !ends_with(w, "us") && !ends_with(w, "is")) {
    return w.substr(0, n - 1);
  }
  if (n > 4 && ends_with(w, "ied")) return w.substr(0, n - 3) + "y";
  if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, n - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return undouble(stem);
  }
  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, n - 3);
    if (stem.size() >= 3 && has_vowel(stem)) return undouble(stem);
  }
  if (n > 5 && ends_with(w, "atic")) return w.substr(0, n - 2);
  return std::nullopt;
}

const std::unordered_map<std::string_view, double>& number_words() {
  static const std::unordered_map<std::string_view, double> kWords = {
      {"zero", 0},      {"one", 1},        {"two", 2},       {"three", 3},
      {"four", 4},      {"five", 5},       {"six", 6},       {"seven", 7},
      {"eight", 8},     {"nine", 9},       {"ten", 10},      {"eleven", 11},
      {"twelve", 12},   {"thirteen", 13},  {"fourteen", 14}, {"fifteen", 15},
      {"sixteen", 16},  {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
      {"twenty", 20},   {"thirty", 30},    {"forty", 40},    {"fifty", 50},
      {"sixty", 60},    {"seventy", 70},   {"eighty", 80},   {"ninety", 90},
      {"first", 1},     {"second", 2},     {"third", 3},     {"fourth", 4},
      {"fifth", 5},     {"sixth", 6},      {"seventh", 7},   {"eighth", 8},
      {"ninth", 9},     {"tenth", 10},
  };
  return kWords;
}

}  // namespace

std::string lemmatize(std::string_view token) {
  std::string word(token);
  if (!lemmatizable(word)) return word;
  while (auto next = apply_rule(word)) word = std::move(*next);
  return word;
}

std::optional<double> number_word_value(std::string_view word) {
  const auto& words = number_words();
  if (auto it = words.find(word); it != words.end()) return it->second;
  // Digit ordinals: 1st, 2nd, 3rd, 4th, 21st ...
  if (word.size() >= 3) {
    std::string_view suffix = word.substr(word.size() - 2);
    if (suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") {
      std::string_view digits = word.substr(0, word.size() - 2);
      int value = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec == std::errc() && ptr == digits.data() + digits.size()) {
        return static_cast<double>(value);
      }
    }
  }
  return std::nullopt;
}

bool is_stopword(std::string_view word) {
  static const std::unordered_set<std::string_view> kStopwords = {
      "a",     "an",    "the",   "of",    "in",    "on",    "at",   "to",
      "for",   "by",    "with",  "from",  "and",   "or",    "is",   "are",
      "was",   "were",  "be",    "been",  "being", "has",   "have", "had",
      "do",    "does",  "did",   "that",  "which", "who",   "whom", "this",
      "these", "those", "it",    "its",   "as",    "than",  "then", "there",
      "their", "his",   "her",   "he",    "she",   "they",  "them", "also",
      "but",   "into",  "over",  "under", "after", "before", "while", "when",
      "where", "not",   "no",    "never", "all",   "any",   "each", "every",
  };
  return kStopwords.count(word) > 0;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace tablefv
