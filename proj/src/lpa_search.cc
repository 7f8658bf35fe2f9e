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

#include "tablefv/lpa_search.h"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "tablefv/trigger_lexicon_data.h"

namespace tablefv {

namespace {

using json = nlohmann::json;

constexpr char kItemSep = '\x1f';
constexpr char kCacheSep = '\x1e';

std::vector<std::string> string_list(const json& j, std::string_view field) {
  if (!j.is_array()) {
    throw std::invalid_argument("lexicon field '" + std::string(field) +
                                "' must be a list");
  }
  std::vector<std::string> out;
  for (const auto& item : j) out.push_back(item.get<std::string>());
  return out;
}

void append_key(std::string& key, std::vector<std::string> parts) {
  std::sort(parts.begin(), parts.end());
  for (auto& p : parts) {
    key += p;
    key += kItemSep;
  }
  key += kCacheSep;
}

std::string view_key(const CacheEntry& entry) {
  const View& v = entry.value.as_view();
  std::string out = entry.expr->kind == Expr::Kind::kRoot ? "T:" : "D:";
  for (int r : v.rows()) out += std::to_string(r) + ",";
  out += '/';
  for (int c : v.cols()) out += std::to_string(c) + ",";
  return out;
}

std::size_t scalar_slots(const FunctionDef& fn) {
  return static_cast<std::size_t>(std::count_if(
      fn.arg_types.begin(), fn.arg_types.end(), [](TypeTag t) {
        return t == TypeTag::kNum || t == TypeTag::kStr ||
               t == TypeTag::kBool || t == TypeTag::kVal;
      }));
}

bool returns_scalar(const FunctionDef& fn) { return fn.return_type != TypeTag::kView; }

// Lower bound on the applications needed to finish from a state. Each
// non-final step lowers the scalar count by at most `per_step`, the final
// step by at most `final_step`, and each step consumes at most one view.
class StepBound {
 public:
  explicit StepBound(const std::vector<const FunctionDef*>& functions) {
    for (const FunctionDef* fn : functions) {
      int slots = static_cast<int>(scalar_slots(*fn));
      final_step_ = std::max(final_step_, slots);
      per_step_ = std::max(per_step_, slots - (returns_scalar(*fn) ? 1 : 0));
    }
  }

  int needed(const CacheState& s) const {
    int p = static_cast<int>(s.pending());
    int steps = 1;
    if (p > final_step_) {
      if (per_step_ <= 0) return std::numeric_limits<int>::max();
      steps = 1 + (p - final_step_ + per_step_ - 1) / per_step_;
    }
    return std::max(steps, static_cast<int>(s.derived_views()));
  }

 private:
  int final_step_ = 0;
  int per_step_ = 0;
};

class Searcher {
 public:
  Searcher(const Table& table, const std::vector<const FunctionDef*>& functions,
           const SearchConfig& config)
      : table_(table), functions_(functions), config_(config), bound_(functions) {
    for (const auto& col : table.columns()) column_exprs_.push_back(Expr::col(col.name));
    start_ = std::chrono::steady_clock::now();
  }

  CandidateSet run(const Seeds& seeds) {
    std::vector<CacheState> frontier;
    CacheState init = CacheState::initial(table_, seeds);
    if (config_.max_step >= 1 && bound_.needed(init) <= config_.max_step) {
      frontier.push_back(std::move(init));
    } else {
      ++out_.stats.pruned;
    }
    if (config_.dedupe && !frontier.empty()) memo_.insert(frontier[0].value_key());

    while (!frontier.empty() && !stop_) {
      next_.clear();
      for (const CacheState& state : frontier) {
        if (stop_) break;
        expand(state);
      }
      frontier = advance();
    }

    std::sort(out_.items.begin(), out_.items.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.program.trace() < b.program.trace();
              });
    return std::move(out_);
  }

 private:
  // Sorts and deduplicates the next frontier.
  std::vector<CacheState> advance() {
    std::vector<std::pair<std::string, std::size_t>> keyed;
    keyed.reserve(next_.size());
    for (std::size_t i = 0; i < next_.size(); ++i) {
      keyed.emplace_back(next_[i].trace_key(), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<CacheState> out;
    out.reserve(keyed.size());
    for (std::size_t k = 0; k < keyed.size(); ++k) {
      if (k > 0 && keyed[k].first == keyed[k - 1].first) continue;
      CacheState& state = next_[keyed[k].second];
      if (config_.dedupe && !memo_.insert(state.value_key()).second) {
        ++out_.stats.deduped;
        continue;
      }
      out.push_back(std::move(state));
    }
    next_.clear();
    return out;
  }

  bool out_of_time() {
    if (config_.time_budget.count() <= 0) return false;
    if ((out_.stats.expanded & 63) != 0) return false;
    return std::chrono::steady_clock::now() - start_ > config_.time_budget;
  }

  void expand(const CacheState& state) {
    if (out_.stats.expanded >= config_.max_expansions) {
      out_.stats.truncated = true;
      stop_ = true;
      return;
    }
    ++out_.stats.expanded;
    if (out_of_time()) {
      out_.stats.timed_out = true;
      stop_ = true;
      return;
    }
    for (const FunctionDef* fn : functions_) {
      choice_.assign(fn->arity(), Choice{});
      choose(state, *fn, 0);
      if (stop_) return;
    }
  }

  enum class Source { kNum, kStr, kBool, kView, kCol };
  struct Choice {
    Source source = Source::kNum;
    std::size_t index = 0;
  };

  bool taken(std::size_t slot, Source source, std::size_t index) const {
    for (std::size_t i = 0; i < slot; ++i) {
      if (choice_[i].source == source && choice_[i].index == index) return true;
    }
    return false;
  }

  void try_cache(const CacheState& state, const FunctionDef& fn,
                 std::size_t slot, Source source, std::size_t size) {
    for (std::size_t i = 0; i < size && !stop_; ++i) {
      if (taken(slot, source, i)) continue;
      choice_[slot] = {source, i};
      choose(state, fn, slot + 1);
    }
  }

  void choose(const CacheState& state, const FunctionDef& fn, std::size_t slot) {
    if (slot == fn.arity()) {
      apply_choice(state, fn);
      return;
    }
    switch (fn.arg_types[slot]) {
      case TypeTag::kNum:
        try_cache(state, fn, slot, Source::kNum, state.num.size());
        break;
      case TypeTag::kStr:
        try_cache(state, fn, slot, Source::kStr, state.str.size());
        break;
      case TypeTag::kVal:
        try_cache(state, fn, slot, Source::kNum, state.num.size());
        try_cache(state, fn, slot, Source::kStr, state.str.size());
        break;
      case TypeTag::kBool:
        try_cache(state, fn, slot, Source::kBool, state.boolean.size());
        break;
      case TypeTag::kView:
        try_cache(state, fn, slot, Source::kView, state.view.size());
        break;
      case TypeTag::kCol:
        for (std::size_t c = 0; c < column_exprs_.size() && !stop_; ++c) {
          choice_[slot] = {Source::kCol, c};
          choose(state, fn, slot + 1);
        }
        break;
    }
  }

  static const std::vector<CacheEntry>& cache(const CacheState& s, Source src) {
    switch (src) {
      case Source::kNum:
        return s.num;
      case Source::kStr:
        return s.str;
      case Source::kBool:
        return s.boolean;
      default:
        return s.view;
    }
  }

  static std::vector<CacheEntry>& cache(CacheState& s, Source src) {
    return const_cast<std::vector<CacheEntry>&>(
        cache(static_cast<const CacheState&>(s), src));
  }

  void apply_choice(const CacheState& state, const FunctionDef& fn) {
    args_.clear();
    for (const Choice& c : choice_) {
      if (c.source == Source::kCol) {
        args_.emplace_back(ColumnArg{c.index});
      } else {
        args_.emplace_back(cache(state, c.source)[c.index].value);
      }
    }
    EvalResult result = apply(fn, table_, args_);
    if (!result.ok()) {
      ++out_.stats.errored;
      return;
    }

    std::vector<ExprPtr> arg_exprs;
    arg_exprs.reserve(choice_.size());
    for (const Choice& c : choice_) {
      arg_exprs.push_back(c.source == Source::kCol
                              ? column_exprs_[c.index]
                              : cache(state, c.source)[c.index].expr);
    }

    CacheState child;
    child.depth = state.depth + 1;
    for (Source src : {Source::kNum, Source::kStr, Source::kBool, Source::kView}) {
      const auto& from = cache(state, src);
      auto& to = cache(child, src);
      to.reserve(from.size() + 1);
      for (std::size_t i = 0; i < from.size(); ++i) {
        if (!taken(choice_.size(), src, i)) to.push_back(from[i]);
      }
    }

    TypedValue& value = result.value();
    bool pending = child.pending() > 0;
    if (!pending) {
      if (!value.is_bool() || child.derived_views() > 0) {
        ++out_.stats.discarded;
        return;
      }
      emit(Expr::call(fn, std::move(arg_exprs)), value.as_bool());
      return;
    }

    CacheEntry entry{std::move(value), Expr::call(fn, std::move(arg_exprs))};
    if (entry.value.is_num()) {
      child.num.push_back(std::move(entry));
    } else if (entry.value.is_str()) {
      child.str.push_back(std::move(entry));
    } else if (entry.value.is_bool()) {
      child.boolean.push_back(std::move(entry));
    } else {
      child.view.push_back(std::move(entry));
    }
    if (bound_.needed(child) > config_.max_step - child.depth) {
      ++out_.stats.pruned;
      return;
    }
    next_.push_back(std::move(child));
  }

  void emit(ExprPtr expr, bool result) {
    if (!emitted_.insert(expr->trace).second) return;
    out_.items.push_back({Program(std::move(expr)), result});
    if (static_cast<int>(out_.items.size()) >= config_.max_traces) {
      out_.stats.truncated = true;
      stop_ = true;
    }
  }

  const Table& table_;
  const std::vector<const FunctionDef*>& functions_;
  const SearchConfig& config_;
  StepBound bound_;
  std::vector<ExprPtr> column_exprs_;
  std::chrono::steady_clock::time_point start_;

  std::vector<Choice> choice_;
  std::vector<Argument> args_;
  std::vector<CacheState> next_;
  std::unordered_set<std::string> memo_;
  std::unordered_set<std::string> emitted_;
  CandidateSet out_;
  bool stop_ = false;
};

}  // namespace

const TriggerLexicon& TriggerLexicon::builtin() {
  static const TriggerLexicon kLexicon = from_json(kTriggerLexiconJson);
  return kLexicon;
}

TriggerLexicon TriggerLexicon::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("trigger lexicon: ") + e.what());
  }
  TriggerLexicon lex;
  lex.version_ = j.value("version", 0);
  const json words = j.value("words", json::object());
  for (const auto& [word, fns] : words.items()) {
    lex.words_[word] = string_list(fns, word);
  }
  const json phrases = j.value("phrases", json::object());
  for (const auto& [phrase, fns] : phrases.items()) {
    lex.phrases_[phrase] = string_list(fns, phrase);
  }
  json classes = j.value("classes", json::object());
  if (classes.contains("numeral")) lex.numeral_ = string_list(classes["numeral"], "numeral");
  if (classes.contains("ordinal")) lex.ordinal_ = string_list(classes["ordinal"], "ordinal");
  lex.always_on_ = string_list(j.value("always_on", json::array()), "always_on");

  auto check = [](const std::vector<std::string>& names) {
    for (const auto& n : names) {
      if (find_function(n) == nullptr) {
        throw std::invalid_argument("trigger lexicon: unknown function '" + n + "'");
      }
    }
  };
  for (const auto& [w, fns] : lex.words_) check(fns);
  for (const auto& [p, fns] : lex.phrases_) check(fns);
  check(lex.numeral_);
  check(lex.ordinal_);
  check(lex.always_on_);
  return lex;
}

std::vector<std::string> TriggerLexicon::lookup(const std::vector<Token>& tokens) const {
  std::vector<std::string> out;
  auto add = [&out](const std::vector<std::string>& names) {
    out.insert(out.end(), names.begin(), names.end());
  };
  auto add_word = [&](std::string_view w) {
    if (auto it = words_.find(w); it != words_.end()) add(it->second);
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    add_word(t.word);
    if (t.lemma != t.word) add_word(t.lemma);
    if (t.word.size() > 3 && t.word.ends_with("n't")) add_word("not");
    if (t.number) add(numeral_);
    if (is_ordinal_word(t.word)) add(ordinal_);
    for (const auto& [phrase, fns] : phrases_) {
      std::string joined;
      for (std::size_t k = i; k < tokens.size() && joined.size() < phrase.size(); ++k) {
        if (k > i) joined += ' ';
        joined += tokens[k].word;
      }
      if (joined == phrase) add(fns);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_ordinal_word(std::string_view word) {
  static const std::set<std::string_view> kOrdinals = {
      "first", "second", "third", "fourth", "fifth",
      "sixth", "seventh", "eighth", "ninth", "tenth"};
  if (kOrdinals.count(word) > 0) return true;
  if (word.size() < 3) return false;
  std::string_view suffix = word.substr(word.size() - 2);
  if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return false;
  }
  std::string_view digits = word.substr(0, word.size() - 2);
  return std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<const FunctionDef*> trigger_filter(const LinkedStatement& linked,
                                               const TriggerLexicon& lexicon) {
  std::vector<std::string> names = lexicon.lookup(linked.tokens);
  names.insert(names.end(), lexicon.always_on().begin(), lexicon.always_on().end());
  std::vector<const FunctionDef*> out;
  for (const auto& fn : catalog()) {
    if (std::find(names.begin(), names.end(), fn.name) != names.end()) {
      out.push_back(&fn);
    }
  }
  return out;
}

Seeds seeds_from(const LinkedStatement& linked) {
  Seeds seeds;
  for (const auto& m : linked.numbers) seeds.numbers.push_back(m.value);
  seeds.strings = linked.strings;
  return seeds;
}

CacheState CacheState::initial(const Table& table, const Seeds& seeds) {
  CacheState s;
  for (double v : seeds.numbers) s.num.push_back({TypedValue::num(v), Expr::num(v)});
  for (const auto& v : seeds.strings) s.str.push_back({TypedValue::str(v), Expr::str(v)});
  s.view.push_back({TypedValue::view(View(table)), Expr::root()});
  return s;
}

std::size_t CacheState::derived_views() const {
  return static_cast<std::size_t>(std::count_if(view.begin(), view.end(), [](const CacheEntry& e) {
    return e.expr->kind != Expr::Kind::kRoot;
  }));
}

std::string CacheState::trace_key() const {
  std::string key;
  for (const auto* c : {&num, &str, &boolean, &view}) {
    std::vector<std::string> parts;
    parts.reserve(c->size());
    for (const auto& e : *c) parts.push_back(e.expr->trace);
    append_key(key, std::move(parts));
  }
  return key;
}

std::string CacheState::value_key() const {
  std::string key;
  std::vector<std::string> parts;
  for (const auto& e : num) parts.push_back(format_number(e.value.as_num()));
  append_key(key, std::move(parts));
  parts = {};
  for (const auto& e : str) parts.push_back(e.value.as_str());
  append_key(key, std::move(parts));
  parts = {};
  for (const auto& e : boolean) parts.push_back(e.value.as_bool() ? "1" : "0");
  append_key(key, std::move(parts));
  parts = {};
  for (const auto& e : view) parts.push_back(view_key(e));
  append_key(key, std::move(parts));
  return key;
}

CandidateSet search(const Table& table, const Seeds& seeds,
                    const std::vector<const FunctionDef*>& functions,
                    const SearchConfig& config) {
  if (config.max_step < 1 || config.max_traces < 1) {
    throw std::invalid_argument("max_step and max_traces must be at least 1");
  }
  return Searcher(table, functions, config).run(seeds);
}

CandidateSet search(const Table& table, const LinkedStatement& linked,
                    const SearchConfig& config) {
  std::vector<const FunctionDef*> functions;
  if (config.trigger_pruning) {
    functions = trigger_filter(linked);
  } else {
    for (const auto& fn : catalog()) functions.push_back(&fn);
  }
  return search(table, seeds_from(linked), functions, config);
}

}  // namespace tablefv
