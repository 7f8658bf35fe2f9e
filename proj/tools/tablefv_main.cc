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

// Command-line front end: verify, search, link, exec, linearize,
// train-ranker and evaluate.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tablefv/dsl.h"
#include "tablefv/entity_linker.h"
#include "tablefv/harness.h"
#include "tablefv/json_io.h"
#include "tablefv/linearizer.h"
#include "tablefv/lpa_search.h"
#include "tablefv/ranker.h"
#include "tablefv/table.h"

namespace {

using nlohmann::json;
using namespace tablefv;

constexpr int kExitDataError = 2;
constexpr int kExitFailure = 1;

// Errors in inputs (tables, dumps, models, datasets).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TableArgs {
  std::string path;
  std::string delimiter = "#";
  std::string caption;
  bool strict_dims = false;

  void attach(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("--table", path, "Table file");
    if (required) opt->required();
    app->add_option("--delimiter", delimiter, "Cell delimiter")
        ->capture_default_str();
    app->add_option("--caption", caption, "Table caption");
    app->add_flag("--strict-dims", strict_dims,
                  "Reject tables over 50 rows or 10 columns");
  }

  Table load() const {
    if (delimiter.size() != 1) throw InputError("delimiter must be one character");
    ParseOptions options;
    options.delimiter = delimiter[0];
    options.caption = caption;
    options.strict_dims = strict_dims;
    try {
      return load_table_file(path, options);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
};

struct SearchArgs {
  int max_step = 7;
  int max_traces = 50;
  bool no_trigger_pruning = false;
  bool no_dedupe = false;
  CLI::Option* max_step_opt = nullptr;
  CLI::Option* max_traces_opt = nullptr;

  void attach(CLI::App* app) {
    max_step_opt = app->add_option("--max-step", max_step,
                                   "Maximum function applications per program")
                       ->check(CLI::PositiveNumber);
    max_traces_opt = app->add_option("--max-traces", max_traces,
                                     "Stop after this many candidates")
                         ->check(CLI::PositiveNumber);
    app->add_flag("--no-trigger-pruning", no_trigger_pruning,
                  "Search the full catalog");
    app->add_flag("--no-dedupe", no_dedupe, "Disable memoized state dedupe");
  }

  SearchConfig apply(SearchConfig config) const {
    if (max_step_opt->count() > 0) config.max_step = max_step;
    if (max_traces_opt->count() > 0) config.max_traces = max_traces;
    if (no_trigger_pruning) config.trigger_pruning = false;
    if (no_dedupe) config.dedupe = false;
    return config;
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<ScorerModel> load_model(const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return ScorerModel::load(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::string format_confidence(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

// One statement of a batch file (JSON Lines).
struct BatchItem {
  std::string table_id;
  std::string statement;
  Label label = Label::kRefuted;
  std::string caption;
};

std::vector<BatchItem> read_batch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::vector<BatchItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      items.push_back({j.at("table_id").get<std::string>(),
                       j.at("statement").get<std::string>(),
                       label_from_bool(j.value("label", 0) == 1),
                       j.value("caption", std::string())});
    } catch (const json::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return items;
}

// Runs fn(i) for i in [0, n) on `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, n));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
}

// Dataset instances or batch items, as (table, statement, label) work.
struct Workload {
  std::vector<BatchItem> items;
  std::map<std::string, std::shared_ptr<const Table>> tables;
};

Workload batch_workload(const std::string& batch, const std::string& table_dir,
                        char delimiter) {
  Workload w;
  w.items = read_batch(batch);
  for (const auto& item : w.items) {
    if (w.tables.count(item.table_id) > 0) continue;
    ParseOptions options;
    options.delimiter = delimiter;
    options.table_id = item.table_id;
    options.caption = item.caption;
    std::string path = table_dir + "/" + item.table_id;
    try {
      w.tables[item.table_id] =
          std::make_shared<const Table>(load_table_file(path, options));
    } catch (const std::exception& e) {
      throw InputError(item.table_id + ": " + e.what());
    }
  }
  return w;
}

Workload dataset_workload(const std::string& root, const std::string& split,
                          char delimiter, std::size_t limit) {
  LoadOptions options;
  options.delimiter = delimiter;
  options.lenient = true;
  Dataset dataset;
  try {
    dataset = load_dataset(root, split, options);
  } catch (const DataError& e) {
    throw InputError(e.what());
  }
  Workload w;
  w.tables = dataset.tables;
  for (const auto& inst : dataset.instances) {
    if (limit > 0 && w.items.size() >= limit) break;
    if (w.tables[inst.table_id] == nullptr) continue;
    w.items.push_back({inst.table_id, inst.statement, inst.label, inst.caption});
  }
  return w;
}

int run_link(const TableArgs& table_args, const std::string& statement) {
  Table table = table_args.load();
  LinkedStatement linked = link(statement, table);
  json out = linked;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_exec(const TableArgs& table_args, const std::string& trace) {
  Table table = table_args.load();
  Program program;
  try {
    program = parse_program(trace);
  } catch (const TraceParseError& e) {
    std::cerr << "trace: " << e.what() << "\n";
    return kExitDataError;
  }
  if (auto err = type_check(program)) {
    std::cerr << "type error at " << err->location() << ": " << err->message << "\n";
    return kExitDataError;
  }
  EvalResult result = execute(program, table);
  if (!result.ok()) {
    std::cout << "error: " << exec_error_name(result.error().kind) << ": "
              << result.error().detail << "\n";
    return kExitFailure;
  }
  std::cout << type_name(result.value().type()) << " "
            << result.value().to_string() << "\n";
  return 0;
}

int run_search(const TableArgs& table_args, const std::string& statement,
               const SearchConfig& config, const std::string& model_path) {
  Table table = table_args.load();
  LinkedStatement linked = link(statement, table);
  CandidateSet candidates = search(table, linked, config);
  std::optional<ScorerModel> model = load_model(model_path);
  for (const auto& c : candidates.items) {
    std::cout << c.program.trace() << "\t" << (c.result ? "true" : "false") << "\t";
    if (model) std::cout << format_confidence(model->score(linked, c.program));
    std::cout << "\n";
  }
  std::cerr << stats_to_json(candidates.stats).dump() << "\n";
  return 0;
}

int run_search_batch(const Workload& work, const SearchConfig& config,
                     std::size_t threads, const std::string& out_path) {
  std::vector<DumpRecord> records(work.items.size());
  parallel_for(work.items.size(), threads, [&](std::size_t i) {
    const BatchItem& item = work.items[i];
    const Table& table = *work.tables.at(item.table_id);
    DumpRecord& r = records[i];
    r.table_id = item.table_id;
    r.statement = item.statement;
    r.label = item.label;
    r.linked = link(item.statement, table);
    r.candidates = search(table, r.linked, config).items;
  });
  write_dump(out_path, records);
  std::size_t total = 0;
  for (const auto& r : records) total += r.candidates.size();
  std::cerr << "wrote " << records.size() << " records, " << total
            << " candidates to " << out_path << "\n";
  return 0;
}

int run_verify(const TableArgs& table_args, const std::string& statement,
               const ToolConfig& config, const std::string& model_path) {
  Table table = table_args.load();
  std::optional<ScorerModel> model = load_model(model_path);
  if (config.mode != DecisionMode::kVoting && !model) {
    std::cerr << "mode " << mode_name(config.mode) << " needs --model\n";
    return kExitDataError;
  }
  PipelineConfig pipeline;
  pipeline.search = config.search;
  pipeline.mode = config.mode;
  pipeline.scorer = model ? &*model : nullptr;
  pipeline.timeout = config.timeout;
  PipelineOutput out = run_pipeline(table, statement, pipeline);
  std::cout << label_name(out.verdict.label) << "\t"
            << format_confidence(out.verdict.confidence) << "\n";
  if (out.verdict.rationale) {
    std::cout << "rationale\t" << out.verdict.rationale->trace() << "\n";
  }
  std::cerr << out.candidates.items.size() << " candidates"
            << (out.timed_out ? " (timed out)" : "") << "\n";
  return 0;
}

json linearization_json(const Linearization& lin) {
  json j = {{"table_text", lin.table_text},
            {"statement", lin.statement},
            {"text", lin.text}};
  if (!lin.column_annotations.empty()) j["column_annotations"] = lin.column_annotations;
  return j;
}

int run_linearize(const TableArgs& table_args, const std::string& statement,
                  const LinearizationSpec& spec, bool no_prune) {
  Table table = table_args.load();
  LinkedStatement linked = link(statement, table);
  View view = no_prune ? View(table) : prune_columns(table, linked);
  std::cout << linearize(view, statement, spec).text << "\n";
  return 0;
}

int run_linearize_batch(const Workload& work, const LinearizationSpec& spec,
                        bool no_prune, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + out_path);
  for (const auto& item : work.items) {
    const Table& table = *work.tables.at(item.table_id);
    LinkedStatement linked = link(item.statement, table);
    View view = no_prune ? View(table) : prune_columns(table, linked);
    json j = linearization_json(linearize(view, item.statement, spec));
    j["table_id"] = item.table_id;
    j["label"] = item.label == Label::kEntailed ? 1 : 0;
    out << j.dump() << "\n";
  }
  return 0;
}

int run_train(const std::string& dump_path, const std::string& out_path,
              const TrainConfig& config) {
  std::vector<DumpRecord> dump;
  try {
    dump = read_dump(dump_path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  TrainReport report;
  ScorerModel model;
  try {
    model = train(dump, config, &report);
  } catch (const DegenerateDump& e) {
    std::cerr << "degenerate dump: " << e.what() << "\n";
    return kExitDataError;
  }
  model.save(out_path);
  json j = {{"train_statements", report.train_statements},
            {"heldout_statements", report.heldout_statements},
            {"train_examples", report.train_examples},
            {"initial_loss", report.train_loss.front()},
            {"final_loss", report.train_loss.back()},
            {"heldout_loss", report.heldout_loss},
            {"heldout_pairwise_accuracy", report.heldout_pairwise_accuracy},
            {"weights", model.weights().size()}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_evaluate(const ToolConfig& config, const std::string& split,
                 std::size_t limit, std::uint64_t sample_seed,
                 const std::string& json_out) {
  if (config.data_root.empty()) {
    std::cerr << "evaluate needs --data-root (or paths.data_root in the config)\n";
    return kExitDataError;
  }
  LoadOptions options;
  options.delimiter = config.delimiter;
  options.lenient = true;
  Dataset dataset;
  try {
    dataset = load_dataset(config.data_root, split, options);
  } catch (const DataError& e) {
    throw InputError(e.what());
  }
  std::cerr << "loaded " << dataset.instances.size() << " instances, "
            << dataset.tables.size() << " tables ("
            << dataset.table_errors.size() << " unparsable)\n";
  if (limit > 0 && limit < dataset.instances.size()) {
    std::mt19937_64 rng(sample_seed);
    std::shuffle(dataset.instances.begin(), dataset.instances.end(), rng);
    dataset.instances.resize(limit);
  }

  std::optional<ScorerModel> model = load_model(config.model_path);
  if (config.mode != DecisionMode::kVoting && !model) {
    std::cerr << "mode " << mode_name(config.mode) << " needs --model\n";
    return kExitDataError;
  }
  PipelineConfig pipeline;
  pipeline.search = config.search;
  pipeline.mode = config.mode;
  pipeline.scorer = model ? &*model : nullptr;
  pipeline.timeout = config.timeout;
  pipeline.threads = config.threads;
  EvalReport report = evaluate(dataset, pipeline);
  std::cout << report.to_text();
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    if (!out) throw InputError("cannot write " + json_out);
    out << report.to_json().dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Table fact verification by latent program search"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);

  std::string statement;
  std::string model_path;
  std::string mode = "voting";

  // link
  TableArgs link_table;
  auto* link_cmd = app.add_subcommand("link", "Show entity links as JSON");
  link_table.attach(link_cmd);
  link_cmd->add_option("--statement", statement)->required();

  // exec
  TableArgs exec_table;
  std::string trace;
  auto* exec_cmd = app.add_subcommand("exec", "Execute a program trace");
  exec_table.attach(exec_cmd);
  exec_cmd->add_option("--trace", trace)->required();

  // search
  TableArgs search_table;
  SearchArgs search_args;
  std::string batch_path, tables_dir, data_root, split = "train", out_path;
  std::size_t limit = 0;
  std::size_t threads = 0;
  auto* search_cmd =
      app.add_subcommand("search", "Enumerate candidate programs");
  search_table.attach(search_cmd, false);
  search_args.attach(search_cmd);
  search_cmd->add_option("--statement", statement);
  search_cmd->add_option("--model", model_path, "Score candidates with a model");
  search_cmd->add_option("--batch", batch_path,
                         "JSON Lines of {table_id, statement, label}");
  search_cmd->add_option("--tables", tables_dir, "Table directory for --batch");
  search_cmd->add_option("--data-root", data_root, "Dataset root");
  search_cmd->add_option("--split", split, "Dataset split")->capture_default_str();
  search_cmd->add_option("--limit", limit, "Use the first N statements");
  search_cmd->add_option("--out", out_path, "Candidate dump (batch modes)");
  search_cmd->add_option("--threads", threads, "Worker threads (0 = all)");

  // verify
  TableArgs verify_table;
  SearchArgs verify_search;
  auto* verify_cmd = app.add_subcommand("verify", "Verify one statement");
  verify_table.attach(verify_cmd);
  verify_search.attach(verify_cmd);
  verify_cmd->add_option("--statement", statement)->required();
  auto* verify_mode = verify_cmd->add_option("--mode", mode)
                          ->check(CLI::IsMember({"voting", "weighted", "ranking"}));
  verify_cmd->add_option("--model", model_path);

  // linearize
  TableArgs lin_table;
  std::string lin_mode = "template", scan = "horizontal", order = "tf";
  bool no_prune = false;
  auto* lin_cmd = app.add_subcommand("linearize", "Produce a text premise");
  lin_table.attach(lin_cmd, false);
  lin_cmd->add_option("--statement", statement);
  auto* lin_mode_opt = lin_cmd->add_option("--mode", lin_mode)
                           ->check(CLI::IsMember({"template", "concatenation"}));
  auto* scan_opt = lin_cmd->add_option("--scan", scan)
                       ->check(CLI::IsMember({"horizontal", "vertical"}));
  auto* order_opt =
      lin_cmd->add_option("--order", order)->check(CLI::IsMember({"tf", "ft"}));
  lin_cmd->add_flag("--no-prune", no_prune, "Keep every column");
  lin_cmd->add_option("--batch", batch_path,
                      "JSON Lines of {table_id, statement, label}");
  lin_cmd->add_option("--tables", tables_dir, "Table directory for --batch");
  lin_cmd->add_option("--out", out_path, "Output JSON Lines (batch mode)");

  // train-ranker
  std::string dump_path;
  TrainConfig train_config;
  auto* train_cmd = app.add_subcommand("train-ranker", "Train the candidate scorer");
  train_cmd->add_option("--dump", dump_path, "Candidate dump")->required();
  train_cmd->add_option("--out", out_path, "Model file")->required();
  train_cmd->add_flag("--caption", train_config.use_caption, "Add caption features");
  train_cmd->add_option("--epochs", train_config.epochs)->capture_default_str();
  train_cmd->add_option("--lr", train_config.learning_rate)->capture_default_str();
  train_cmd->add_option("--l2", train_config.l2)->capture_default_str();
  train_cmd->add_option("--heldout", train_config.heldout_fraction)
      ->capture_default_str();
  train_cmd->add_option("--seed", train_config.seed)->capture_default_str();

  // evaluate
  SearchArgs eval_search;
  std::string eval_split = "test", json_out;
  std::size_t eval_limit = 0;
  std::uint64_t sample_seed = 1;
  long timeout_ms = 10000;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate on a dataset split");
  eval_search.attach(eval_cmd);
  auto* eval_root = eval_cmd->add_option("--data-root", data_root, "Dataset root");
  eval_cmd->add_option("--split", eval_split)->capture_default_str();
  auto* eval_mode = eval_cmd->add_option("--mode", mode)
                        ->check(CLI::IsMember({"voting", "weighted", "ranking"}));
  auto* eval_model = eval_cmd->add_option("--model", model_path);
  eval_cmd->add_option("--limit", eval_limit, "Sample N instances");
  eval_cmd->add_option("--sample-seed", sample_seed)->capture_default_str();
  auto* eval_threads = eval_cmd->add_option("--threads", threads);
  auto* eval_timeout = eval_cmd->add_option("--timeout-ms", timeout_ms);
  eval_cmd->add_option("--json", json_out, "Write the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    ToolConfig config;
    if (!config_path.empty()) config = load_tool_config(config_path);

    if (link_cmd->parsed()) return run_link(link_table, statement);
    if (exec_cmd->parsed()) return run_exec(exec_table, trace);

    if (search_cmd->parsed()) {
      SearchConfig sc = search_args.apply(config.search);
      if (!batch_path.empty() || !data_root.empty()) {
        if (out_path.empty()) {
          std::cerr << "batch search needs --out\n";
          return kExitDataError;
        }
        char delim = search_table.delimiter.empty() ? '#' : search_table.delimiter[0];
        Workload work = !batch_path.empty()
                            ? batch_workload(batch_path, tables_dir, delim)
                            : dataset_workload(data_root, split, delim, limit);
        return run_search_batch(work, sc, threads, out_path);
      }
      if (search_table.path.empty() || statement.empty()) {
        std::cerr << "search needs --table and --statement, or a batch source\n";
        return kExitDataError;
      }
      return run_search(search_table, statement, sc, model_path);
    }

    if (verify_cmd->parsed()) {
      config.search = verify_search.apply(config.search);
      if (verify_mode->count() > 0) config.mode = parse_mode(mode);
      if (model_path.empty()) model_path = config.model_path;
      return run_verify(verify_table, statement, config, model_path);
    }

    if (lin_cmd->parsed()) {
      LinearizationSpec spec = config.linearization;
      if (lin_mode_opt->count() > 0) spec.mode = parse_linearize_mode(lin_mode);
      if (scan_opt->count() > 0) spec.scan = parse_scan(scan);
      if (order_opt->count() > 0) spec.order = parse_order(order);
      if (!batch_path.empty()) {
        if (out_path.empty()) {
          std::cerr << "batch linearize needs --out\n";
          return kExitDataError;
        }
        char delim = lin_table.delimiter.empty() ? '#' : lin_table.delimiter[0];
        return run_linearize_batch(batch_workload(batch_path, tables_dir, delim),
                                   spec, no_prune, out_path);
      }
      if (lin_table.path.empty()) {
        std::cerr << "linearize needs --table, or --batch\n";
        return kExitDataError;
      }
      return run_linearize(lin_table, statement, spec, no_prune);
    }

    if (train_cmd->parsed()) return run_train(dump_path, out_path, train_config);

    if (eval_cmd->parsed()) {
      config.search = eval_search.apply(config.search);
      if (eval_root->count() > 0) config.data_root = data_root;
      if (eval_mode->count() > 0) config.mode = parse_mode(mode);
      if (eval_model->count() > 0) config.model_path = model_path;
      if (eval_threads->count() > 0) config.threads = threads;
      if (eval_timeout->count() > 0) {
        config.timeout = std::chrono::milliseconds(timeout_ms);
      }
      return run_evaluate(config, eval_split, eval_limit, sample_seed, json_out);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const EmptyView& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
