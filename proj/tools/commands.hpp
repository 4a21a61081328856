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

#pragma once

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "layoutret/layoutret.hpp"

namespace layoutret::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kValidation = 3 };

// Thrown for operator mistakes that are not tied to a library error code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  MatcherConfig matcher;
  unsigned workers = default_workers();
  std::string log_level = "info";
  Unit unit = Unit::cm;
};

inline json read_json_file(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, std::string("cannot read ") + what + " " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_config, path.string() + ": " + e.what());
  }
}

inline std::map<int, double> parse_threshold_table(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_config, "threshold table must map query counts to values");
  std::map<int, double> table;
  for (const auto& [k, v] : j.items()) {
    auto n = text::parse_int(k);
    if (!n || !v.is_number()) throw Error(ErrorCode::invalid_config, "bad threshold table entry \"" + k + "\"");
    table[static_cast<int>(*n)] = v.get<double>();
  }
  return table;
}

// Config file keys: lambda, decay_scale, threshold_table (path or inline
// object), assignment, workers, log_level, unit.
inline void apply_config_file(CliConfig& cfg, const fs::path& path) {
  const json j = read_json_file(path, "config");
  if (!j.is_object()) throw Error(ErrorCode::invalid_config, path.string() + ": expected an object");
  try {
    if (j.contains("lambda")) cfg.matcher.lambda = j["lambda"].get<double>();
    if (j.contains("decay_scale")) cfg.matcher.decay_scale = j["decay_scale"].get<double>();
    if (j.contains("threshold_table")) {
      const auto& t = j["threshold_table"];
      cfg.matcher.threshold_table =
          t.is_string() ? parse_threshold_table(read_json_file(path.parent_path() / t.get<std::string>(), "threshold table"))
                        : parse_threshold_table(t);
    }
    if (j.contains("assignment")) {
      const auto mode = j["assignment"].get<std::string>();
      if (mode == "independent")
        cfg.matcher.assignment_mode = AssignmentMode::independent;
      else if (mode == "one_to_one")
        cfg.matcher.assignment_mode = AssignmentMode::one_to_one;
      else
        throw Error(ErrorCode::invalid_config, "assignment must be independent or one_to_one");
    }
    if (j.contains("workers")) cfg.workers = j["workers"].get<unsigned>();
    if (j.contains("log_level")) cfg.log_level = j["log_level"].get<std::string>();
    if (j.contains("unit")) {
      auto u = parse_unit(j["unit"].get<std::string>());
      if (!u) throw Error(ErrorCode::invalid_config, "unit must be cm or inch");
      cfg.unit = *u;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_config, path.string() + ": " + e.what());
  }
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_failure:
    case ErrorCode::malformed_record:
    case ErrorCode::schema_mismatch:
      return kIo;
    default:
      return kValidation;
  }
}

inline std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = spdlog::stderr_color_mt("layoutret");
    l->set_pattern("%^%l%$: %v");
    return l;
  }();
  return log;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractOptions {
  fs::path in_dir;
  fs::path out_db;
  std::set<DocType> types{DocType::presentation, DocType::wordprocessing, DocType::spreadsheet};
  unsigned workers = 0;
};

inline std::optional<DocType> type_of_extension(const fs::path& p) {
  const auto ext = text::to_lower(p.extension().string());
  if (ext == ".pptx" || ext == ".pptm" || ext == ".potx") return DocType::presentation;
  if (ext == ".docx" || ext == ".docm" || ext == ".dotx") return DocType::wordprocessing;
  if (ext == ".xlsx" || ext == ".xlsm" || ext == ".xltx") return DocType::spreadsheet;
  return std::nullopt;
}

inline std::set<DocType> parse_type_filter(const std::string& csv) {
  std::set<DocType> out;
  for (const auto& tok : text::split(csv, ',')) {
    if (tok.empty()) continue;
    auto t = parse_doc_type(tok);
    if (!t || *t == DocType::unknown) throw UsageError("unknown document type \"" + tok + "\"");
    out.insert(*t);
  }
  if (out.empty()) throw UsageError("--types selects no document type");
  return out;
}

inline int cmd_extract(const ExtractOptions& opt, std::ostream& out) {
  auto log = logger();
  std::error_code ec;
  if (!fs::is_directory(opt.in_dir, ec)) throw UsageError(opt.in_dir.string() + " is not a directory");

  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(opt.in_dir, fs::directory_options::skip_permission_denied, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && type_of_extension(it->path())) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  struct Outcome {
    std::optional<DocumentEntry> entry;
    std::string doc_id;
    bool filtered = false;
  };
  std::vector<Outcome> outcomes(files.size());
  parallel_for(files.size(), opt.workers, [&](std::size_t i) {
    const auto& path = files[i];
    auto& o = outcomes[i];
    o.doc_id = fs::relative(path, opt.in_dir).generic_string();
    try {
      auto pkg = open_package(path);
      const auto type = detect_doc_type(pkg);
      if (type == DocType::unknown) throw Error(ErrorCode::unsupported_type, "no recognised main document part");
      if (!opt.types.contains(type)) {
        o.filtered = true;
        return;
      }
      for (const auto& w : pkg.warnings()) log->warn("{}: {}", path.string(), w);
      auto result = extract_document(pkg, o.doc_id);
      for (const auto& w : result.warnings) log->warn("{}: {}", path.string(), w);
      o.entry = DocumentEntry{path.string(), type, std::move(result.pages)};
    } catch (const std::exception& e) {
      log->error("skipped {}: {}", path.string(), e.what());
    }
  });

  // Single writer: results are merged here in path order.
  FeatureDb db;
  std::size_t extracted = 0, skipped = 0, filtered = 0;
  for (auto& o : outcomes) {
    if (o.filtered) {
      ++filtered;
    } else if (o.entry) {
      ++extracted;
      db.put(o.doc_id, std::move(*o.entry));
    } else {
      ++skipped;
    }
  }
  save_db(db, opt.out_db);
  out << "files seen: " << files.size() << ", extracted: " << extracted << ", skipped: " << skipped;
  if (filtered) out << ", filtered by type: " << filtered;
  out << ", pages: " << db.page_count() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// search

struct SearchCliOptions {
  fs::path db;
  fs::path query;
  std::string threshold = "auto";
  std::optional<std::size_t> top;
  bool explain = false;
  std::string format = "table";
};

inline std::optional<double> parse_threshold_flag(const std::string& s) {
  if (text::iequals(s, "auto")) return std::nullopt;
  auto v = text::parse_double(s);
  if (!v || *v < 0.0 || *v > 1.0) throw UsageError("--threshold must be auto or a number in [0, 1]");
  return v;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline void print_traces(std::ostream& out, const ScoredPage& page) {
  for (const auto& t : page.traces) {
    out << "    item " << t.item_index << " " << to_string(t.kind);
    if (t.matched_object) out << " object " << *t.matched_object;
    if (!t.matched_page_geometry() && !t.matched_object) out << " (no object of this kind)";
    out << "  s_value_item " << fixed(t.s_value_item, 4) << '\n';
    for (const auto& f : t.fields) {
      out << "      " << f.field << " [" << to_string(f.method) << "] query " << f.query_value << " | page "
          << f.feature_value;
      if (f.d) out << " | d " << fixed(*f.d, 4);
      if (f.distance_range) out << " | range " << fixed(*f.distance_range, 4);
      out << " | s " << fixed(f.s_value_field, 4) << '\n';
    }
  }
}

inline int cmd_search(const SearchCliOptions& opt, const CliConfig& cfg, std::ostream& out) {
  if (opt.format != "table" && opt.format != "records") throw UsageError("--format must be table or records");
  SearchOptions so;
  so.threshold = parse_threshold_flag(opt.threshold);
  so.top_k = opt.top;
  so.workers = cfg.workers;

  const auto rq = parse_query_file(opt.query, cfg.unit);
  const auto db = load_db(opt.db);
  const auto result = search(rq, db, cfg.matcher, so);

  auto source_of = [&](const std::string& doc_id) { return db.documents.at(doc_id).source_path; };
  if (result.scanned == 0)
    logger()->info("0 pages scanned of type {}", to_string(rq.doc_type));

  if (opt.format == "records") {
    out << json{{"query", rq.name},
                {"doc_type", to_string(rq.doc_type)},
                {"n", query_count(rq)},
                {"threshold", result.threshold},
                {"scanned", result.scanned},
                {"results", result.pages.size()}}
               .dump()
        << '\n';
    for (const auto& p : result.pages) {
      auto j = to_json(p, opt.explain);
      j["source"] = source_of(p.doc_id);
      out << j.dump() << '\n';
    }
    return kOk;
  }

  out << result.pages.size() << " of " << result.scanned << " " << to_string(rq.doc_type)
      << " pages at threshold " << fixed(result.threshold, 4) << '\n';
  if (result.pages.empty()) return kOk;
  out << "rank  s_value  page  document\n";
  std::size_t rank = 0;
  for (const auto& p : result.pages) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%4zu  %7.4f  %4d  ", ++rank, p.s_value_final, p.page_index);
    out << buf << source_of(p.doc_id) << '\n';
    if (opt.explain) print_traces(out, p);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalCliOptions {
  fs::path db;
  fs::path queries;
  fs::path truth;
  std::string format = "table";
};

inline int cmd_eval(const EvalCliOptions& opt, const CliConfig& cfg, std::ostream& out) {
  if (opt.format != "table" && opt.format != "records") throw UsageError("--format must be table or records");
  std::error_code ec;
  if (!fs::is_directory(opt.queries, ec)) throw UsageError(opt.queries.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(opt.queries))
    if (e.is_regular_file() && text::iequals(e.path().extension().string(), ".json")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError(opt.queries.string() + " holds no query files");

  std::vector<BenchmarkQuery> queries;
  for (const auto& f : files) {
    auto rq = parse_query_file(f, cfg.unit);
    if (!rq.group) throw Error(ErrorCode::validation_error, f.string() + ": query has no \"group\"");
    auto group = *rq.group;
    queries.push_back({std::move(rq), std::move(group)});
  }
  const auto truth = load_ground_truth(opt.truth);
  const auto db = load_db(opt.db);
  const auto report = run_benchmark(db, queries, truth, cfg.matcher, cfg.workers);

  if (opt.format == "records") {
    for (const auto& row : report.rows) out << to_json(row).dump() << '\n';
  } else {
    out << render_table(report);
  }
  return kOk;
}

}  // namespace layoutret::cli
