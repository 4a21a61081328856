// Copyright 2026 The layoutret Authors.
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

// layoutret: extract layout features from OOXML files, search them with
// layout queries, and benchmark retrieval against labeled groups.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cstdlib>
#include <iostream>

#include "commands.hpp"

using namespace layoutret;
using namespace layoutret::cli;

int main(int argc, char** argv) {
  CLI::App app{"Layout-based retrieval over OOXML documents"};
  app.require_subcommand(1);

  std::string config_path;
  std::string log_level;
  app.add_option("--config", config_path, "JSON config file (default: $LAYOUTRET_CONFIG)");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off");

  ExtractOptions ex;
  std::string types;
  std::optional<unsigned> workers;
  auto* extract = app.add_subcommand("extract", "Scan a directory and write a feature database");
  extract->add_option("--in", ex.in_dir, "Directory to scan recursively")->required();
  extract->add_option("--out", ex.out_db, "Feature database to write")->required();
  extract->add_option("--types", types, "Comma-separated subset of pptx,docx,xlsx");
  extract->add_option("--workers", workers, "Worker threads (default: logical cores)");

  SearchCliOptions so;
  std::optional<std::size_t> top;
  auto* search_cmd = app.add_subcommand("search", "Rank database pages against a layout query");
  search_cmd->add_option("--db", so.db, "Feature database")->required();
  search_cmd->add_option("--query", so.query, "Query file")->required();
  search_cmd->add_option("--threshold", so.threshold, "auto or a value in [0, 1]");
  search_cmd->add_option("--top", top, "Keep at most N results");
  search_cmd->add_flag("--explain", so.explain, "Include per-item score traces");
  search_cmd->add_option("--format", so.format, "table or records");
  search_cmd->add_option("--workers", workers, "Worker threads (default: logical cores)");

  EvalCliOptions eo;
  auto* eval_cmd = app.add_subcommand("eval", "Precision and recall of query files against ground truth");
  eval_cmd->add_option("--db", eo.db, "Feature database")->required();
  eval_cmd->add_option("--queries", eo.queries, "Directory of query files, each naming a group")->required();
  eval_cmd->add_option("--truth", eo.truth, "Ground truth file")->required();
  eval_cmd->add_option("--format", eo.format, "table or records");
  eval_cmd->add_option("--workers", workers, "Worker threads (default: logical cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  auto log = logger();
  try {
    CliConfig cfg;
    if (config_path.empty())
      if (const char* env = std::getenv("LAYOUTRET_CONFIG"); env && *env) config_path = env;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (!log_level.empty()) cfg.log_level = log_level;
    if (workers) cfg.workers = *workers;
    cfg.matcher.validate();
    const auto level = spdlog::level::from_str(cfg.log_level);
    if (level == spdlog::level::off && cfg.log_level != "off")
      throw Error(ErrorCode::invalid_config, "unknown log level " + cfg.log_level);
    log->set_level(level);

    if (*extract) {
      if (!types.empty()) ex.types = parse_type_filter(types);
      ex.workers = cfg.workers;
      return cmd_extract(ex, std::cout);
    }
    if (*search_cmd) {
      so.top = top;
      return cmd_search(so, cfg, std::cout);
    }
    return cmd_eval(eo, cfg, std::cout);
  } catch (const UsageError& e) {
    log->error("{}", e.what());
    return kUsage;
  } catch (const Error& e) {
    log->error("{}", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    log->error("{}", e.what());
    return kIo;
  }
}
