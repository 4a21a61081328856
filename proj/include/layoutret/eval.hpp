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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "layoutret/matcher.hpp"

namespace layoutret {

// Labeled groups of documents; a document is relevant to a query when it
// belongs to the query's group.
struct GroundTruth {
  std::map<std::string, std::set<std::string>> groups;

  bool operator==(const GroundTruth&) const = default;
};

inline GroundTruth parse_ground_truth(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::syntax_error, std::string("ground truth: ") + e.what());
  }
  if (!j.is_object() || !j.contains("groups") || !j["groups"].is_object())
    throw Error(ErrorCode::validation_error, "ground truth must be an object with a \"groups\" object");
  GroundTruth gt;
  for (const auto& [id, members] : j["groups"].items()) {
    if (!members.is_array()) throw Error(ErrorCode::validation_error, "group " + id + " must be an array of doc ids");
    auto& set = gt.groups[id];
    for (const auto& m : members) {
      if (!m.is_string()) throw Error(ErrorCode::validation_error, "group " + id + " has a non-string member");
      set.insert(m.get<std::string>());
    }
  }
  return gt;
}

inline GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ground_truth(buf.str());
}

struct PrecisionRecall {
  std::size_t a = 0;  // relevant and retrieved
  std::size_t b = 0;  // retrieved but not relevant
  std::size_t c = 0;  // relevant but missed
  std::optional<double> precision;  // A / (A + B); undefined when nothing was retrieved
  std::optional<double> recall;     // A / (A + C); undefined when nothing is relevant
};

inline PrecisionRecall precision_recall(std::size_t a, std::size_t b, std::size_t c) {
  PrecisionRecall pr{a, b, c, std::nullopt, std::nullopt};
  if (a + b > 0) pr.precision = static_cast<double>(a) / static_cast<double>(a + b);
  if (a + c > 0) pr.recall = static_cast<double>(a) / static_cast<double>(a + c);
  return pr;
}

template <typename T>
PrecisionRecall precision_recall(const std::set<T>& retrieved, const std::set<T>& relevant) {
  std::size_t a = 0;
  for (const auto& r : retrieved) a += relevant.count(r);
  return precision_recall(a, retrieved.size() - a, relevant.size() - a);
}

// Two decimals, halves rounded away from zero (0.625 -> "0.63").
inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

inline std::string format2(std::optional<double> v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round2(*v));
  return buf;
}

struct EvalRow {
  std::string group;
  std::string query;
  double threshold = 0;
  PrecisionRecall metrics;
  std::size_t pages = 0;  // pages clearing the threshold, across all documents
  std::vector<std::string> retrieved;  // doc ids, sorted
};

struct EvalReport {
  std::vector<EvalRow> rows;
};

struct BenchmarkQuery {
  RetrievalQuery query;
  std::string group;
};

// Runs each query and scores it at document granularity: a document is
// retrieved when any of its pages clears the threshold.
inline EvalReport run_benchmark(const FeatureDb& db, const std::vector<BenchmarkQuery>& queries, const GroundTruth& truth,
                                const MatcherConfig& cfg, unsigned workers = 1) {
  cfg.validate();
  for (const auto& q : queries)
    if (!truth.groups.contains(q.group)) throw Error(ErrorCode::unknown_group, "group " + q.group + " is not in the ground truth");

  EvalReport report;
  report.rows.resize(queries.size());
  parallel_for(queries.size(), workers, [&](std::size_t i) {
    const auto& bq = queries[i];
    auto result = search(bq.query, db, cfg);
    std::set<std::string> retrieved;
    for (const auto& p : result.pages) retrieved.insert(p.doc_id);
    auto& row = report.rows[i];
    row.group = bq.group;
    row.query = bq.query.name.empty() ? "query" + std::to_string(i + 1) : bq.query.name;
    row.threshold = result.threshold;
    row.metrics = precision_recall(retrieved, truth.groups.at(bq.group));
    row.pages = result.pages.size();
    row.retrieved.assign(retrieved.begin(), retrieved.end());
  });
  return report;
}

inline std::string render_table(const EvalReport& report) {
  std::size_t gw = 5, qw = 5;
  for (const auto& r : report.rows) {
    gw = std::max(gw, r.group.size());
    qw = std::max(qw, r.query.size());
  }
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %-*s  %9s  %4s  %4s  %4s  %9s  %9s  %5s\n", static_cast<int>(gw), "group",
                static_cast<int>(qw), "query", "threshold", "A", "B", "C", "precision", "recall", "pages");
  out << buf;
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %9s  %4zu  %4zu  %4zu  %9s  %9s  %5zu\n", static_cast<int>(gw),
                  r.group.c_str(), static_cast<int>(qw), r.query.c_str(), format2(r.threshold).c_str(), r.metrics.a,
                  r.metrics.b, r.metrics.c, format2(r.metrics.precision).c_str(), format2(r.metrics.recall).c_str(),
                  r.pages);
    out << buf;
  }
  return out.str();
}

inline json to_json(const EvalRow& r) {
  auto metric = [](std::optional<double> v) { return v ? json(round2(*v)) : json(nullptr); };
  return json{{"group", r.group},
              {"query", r.query},
              {"threshold", round2(r.threshold)},
              {"A", r.metrics.a},
              {"B", r.metrics.b},
              {"C", r.metrics.c},
              {"precision", metric(r.metrics.precision)},
              {"recall", metric(r.metrics.recall)},
              {"pages", r.pages},
              {"retrieved", r.retrieved}};
}

}  // namespace layoutret
