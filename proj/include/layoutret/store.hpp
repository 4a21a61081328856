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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ranges>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "layoutret/feature_json.hpp"

namespace layoutret {

inline constexpr int kSchemaVersion = 1;

struct DocumentEntry {
  std::string source_path;
  DocType doc_type = DocType::unknown;
  std::vector<PageFeature> pages;  // ascending page_index

  bool operator==(const DocumentEntry&) const = default;
};

struct FeatureDb {
  int schema_version = kSchemaVersion;
  std::string unit = "cm";
  std::map<std::string, DocumentEntry> documents;  // keyed and ordered by doc_id

  bool operator==(const FeatureDb&) const = default;

  // Adds or replaces a document; its pages are sorted by page_index.
  void put(std::string doc_id, DocumentEntry entry) {
    std::ranges::sort(entry.pages, {}, &PageFeature::page_index);
    documents.insert_or_assign(std::move(doc_id), std::move(entry));
  }

  std::size_t page_count() const {
    std::size_t n = 0;
    for (const auto& [id, doc] : documents) n += doc.pages.size();
    return n;
  }
};

// Pages of one document type in (doc_id, page_index) order, lazily.
inline auto pages_of_type(const FeatureDb& db, DocType type) {
  return db.documents | std::views::values |
         std::views::filter([type](const DocumentEntry& d) { return d.doc_type == type; }) |
         std::views::transform([](const DocumentEntry& d) -> const std::vector<PageFeature>& { return d.pages; }) |
         std::views::join;
}

inline std::string iso8601_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

// Writes `content` next to `path` and renames it into place, so readers see
// either the old file or the complete new one.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "-" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_failure, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::io_failure, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io_failure, "cannot replace " + path.string());
  }
}

inline std::string serialize_db(const FeatureDb& db) {
  std::ostringstream out;
  out << json{{"schema", db.schema_version}, {"unit", db.unit}, {"created", iso8601_now()}}.dump() << '\n';
  for (const auto& [doc_id, doc] : db.documents) {
    for (const auto& page : doc.pages) {
      auto record = to_json(page);
      record["doc_id"] = doc_id;
      record["source"] = doc.source_path;
      out << record.dump() << '\n';
    }
  }
  return out.str();
}

inline void save_db(const FeatureDb& db, const std::filesystem::path& path) { atomic_write(path, serialize_db(db)); }

inline FeatureDb parse_db(std::istream& in) {
  FeatureDb db;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw RecordError(ErrorCode::malformed_record, line_no, e.what());
    }
    if (!header) {
      header = true;
      if (!j.is_object() || !j.contains("schema"))
        throw RecordError(ErrorCode::malformed_record, line_no, "missing header record");
      if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion)
        throw RecordError(ErrorCode::schema_mismatch, line_no,
                          "schema " + j["schema"].dump() + ", reader expects " + std::to_string(kSchemaVersion));
      db.unit = j.value("unit", "cm");
      if (db.unit != "cm") throw RecordError(ErrorCode::schema_mismatch, line_no, "unit " + db.unit);
      continue;
    }
    try {
      auto page = page_feature_from_json(j);
      auto& doc = db.documents[page.doc_id];
      if (doc.pages.empty()) {
        doc.source_path = j.value("source", "");
        doc.doc_type = page.doc_type;
      } else if (doc.doc_type != page.doc_type) {
        throw Error(ErrorCode::malformed_record, "doc_type changes within " + page.doc_id);
      }
      doc.pages.push_back(std::move(page));
    } catch (const RecordError&) {
      throw;
    } catch (const std::exception& e) {
      throw RecordError(ErrorCode::malformed_record, line_no, e.what());
    }
  }
  if (!header) throw RecordError(ErrorCode::malformed_record, line_no, "empty file");
  for (auto& [id, doc] : db.documents) std::ranges::sort(doc.pages, {}, &PageFeature::page_index);
  return db;
}

inline FeatureDb load_db(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
  return parse_db(in);
}

}  // namespace layoutret
