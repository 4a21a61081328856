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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "layoutret/extractor.hpp"
#include "layoutret/store.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

namespace layoutret {
namespace {

namespace fs = std::filesystem;
namespace t = testing;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> n{0};
    path_ = fs::temp_directory_path() / ("layoutret-store-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

FeatureDb fixture_db() {
  FeatureDb db;
  for (const auto& f : t::all_fixtures()) {
    auto r = extract_document(open_package_bytes(f.bytes, f.name), f.name);
    db.put(f.name, {"in/" + f.name, f.type, r.pages});
  }
  return db;
}

ErrorCode load_error(const std::string& content, std::size_t* line = nullptr) {
  std::istringstream in(content);
  try {
    parse_db(in);
  } catch (const RecordError& e) {
    if (line) *line = e.line();
    return e.code();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a load error";
  return ErrorCode::io_failure;
}

TEST(SaveDb, EmptyDbIsHeaderOnly) {
  TempDir dir;
  save_db(FeatureDb{}, dir / "db.jsonl");
  auto lines = lines_of(dir / "db.jsonl");
  ASSERT_EQ(lines.size(), 1u);
  auto header = json::parse(lines[0]);
  EXPECT_EQ(header["schema"], 1);
  EXPECT_EQ(header["unit"], "cm");
  EXPECT_EQ(header["created"].get<std::string>().size(), 20u);
  EXPECT_EQ(load_db(dir / "db.jsonl"), FeatureDb{});
}

TEST(SaveDb, OneDocTwoPages) {
  TempDir dir;
  auto f = t::pptx_groups_two_slides();
  FeatureDb db;
  db.put("deck", {"deck.pptx", f.type, extract_document(open_package_bytes(f.bytes, "deck.pptx"), "deck").pages});
  save_db(db, dir / "db.jsonl");
  auto lines = lines_of(dir / "db.jsonl");
  ASSERT_EQ(lines.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    auto rec = json::parse(lines[i]);
    for (const char* key : {"doc_id", "doc_type", "page_index", "page_geometry", "objects"})
      EXPECT_TRUE(rec.contains(key)) << key;
    EXPECT_EQ(rec["page_index"], static_cast<int>(i));
  }
  EXPECT_EQ(load_db(dir / "db.jsonl"), db);
}

TEST(SaveDb, FixtureRoundTrip) {
  TempDir dir;
  auto db = fixture_db();
  save_db(db, dir / "db.jsonl");
  EXPECT_EQ(load_db(dir / "db.jsonl"), db);
}

TEST(SaveDb, UnwritablePathIsIoFailure) {
  try {
    save_db(FeatureDb{}, "/nonexistent-dir/for/sure/db.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_failure);
  }
}

TEST(SaveDb, ConcurrentWritersNeverTear) {
  TempDir dir;
  const auto path = dir / "db.jsonl";
  t::Rng rng(11);
  std::vector<FeatureDb> dbs;
  for (int i = 0; i < 4; ++i) dbs.push_back(t::random_db(rng, 6 + i));
  std::vector<std::string> bodies;
  for (const auto& db : dbs) {
    auto s = serialize_db(db);
    bodies.push_back(s.substr(s.find('\n') + 1));
  }
  std::atomic<bool> stop{false};
  std::atomic<int> checked{0};
  std::thread reader([&] {
    while (!stop) {
      std::ifstream in(path, std::ios::binary);
      if (!in) continue;
      std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (all.empty()) continue;
      auto body = all.substr(all.find('\n') + 1);
      EXPECT_NE(std::find(bodies.begin(), bodies.end(), body), bodies.end());
      ++checked;
    }
  });
  std::vector<std::thread> writers;
  for (int w = 0; w < 4; ++w)
    writers.emplace_back([&, w] {
      for (int k = 0; k < 25; ++k) save_db(dbs[w], path);
    });
  for (auto& th : writers) th.join();
  stop = true;
  reader.join();
  auto final_db = load_db(path);
  EXPECT_NE(std::find(dbs.begin(), dbs.end(), final_db), dbs.end());
  for (const auto& e : fs::directory_iterator(dir.path())) EXPECT_EQ(e.path().filename(), "db.jsonl");
}

TEST(LoadDb, MissingFileIsIoFailure) {
  try {
    load_db("/nonexistent-dir/db.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_failure);
  }
}

TEST(LoadDb, SchemaMismatch) {
  EXPECT_EQ(load_error("{\"schema\":999,\"unit\":\"cm\",\"created\":\"2026-01-01T00:00:00Z\"}\n"),
            ErrorCode::schema_mismatch);
  EXPECT_EQ(load_error("{\"schema\":1,\"unit\":\"in\"}\n"), ErrorCode::schema_mismatch);
}

TEST(LoadDb, TruncatedFinalLine) {
  auto s = serialize_db(fixture_db());
  const auto total_lines = std::count(s.begin(), s.end(), '\n');
  s.resize(s.size() - 15);
  std::size_t line = 0;
  EXPECT_EQ(load_error(s, &line), ErrorCode::malformed_record);
  EXPECT_EQ(line, static_cast<std::size_t>(total_lines));
}

TEST(LoadDb, MalformedMiddleRecordReportsLine) {
  std::string s = "{\"schema\":1,\"unit\":\"cm\"}\n";
  s += "{\"doc_id\":\"a\",\"doc_type\":\"presentation\",\"page_index\":1,\"page_geometry\":{},\"objects\":[]}\n";
  s += "{\"doc_id\":\"a\",\"doc_type\":\"presentation\",\"page_index\":\"two\"}\n";
  std::size_t line = 0;
  EXPECT_EQ(load_error(s, &line), ErrorCode::malformed_record);
  EXPECT_EQ(line, 3u);
}

TEST(LoadDb, EmptyFileIsMalformed) { EXPECT_EQ(load_error(""), ErrorCode::malformed_record); }

TEST(PagesOfType, OnlyMatchingType) {
  auto db = fixture_db();
  std::size_t n = 0;
  for (const auto& p : pages_of_type(db, DocType::presentation)) {
    EXPECT_EQ(p.doc_type, DocType::presentation);
    ++n;
  }
  EXPECT_EQ(n, 5u);
}

TEST(PagesOfType, NoSpreadsheets) {
  FeatureDb db;
  auto f = t::pptx_image_textbox();
  db.put("a", {"a", f.type, f.expected});
  auto g = t::docx_letter();
  db.put("b", {"b", g.type, g.expected});
  EXPECT_TRUE(std::ranges::empty(pages_of_type(db, DocType::spreadsheet)));
  EXPECT_EQ(std::ranges::distance(pages_of_type(db, DocType::presentation)), 1);
}

TEST(PagesOfType, CountsSumToTotal) {
  t::Rng rng(3);
  for (int round = 0; round < 20; ++round) {
    auto db = t::random_db(rng, 3 + round % 5);
    std::map<DocType, std::size_t> oracle;
    for (const auto& [id, doc] : db.documents) oracle[doc.doc_type] += doc.pages.size();
    std::size_t total = 0;
    for (auto type : {DocType::presentation, DocType::wordprocessing, DocType::spreadsheet}) {
      auto n = static_cast<std::size_t>(std::ranges::distance(pages_of_type(db, type)));
      EXPECT_EQ(n, oracle[type]);
      total += n;
    }
    EXPECT_EQ(total, db.page_count());
  }
}

TEST(PagesOfType, StableOrder) {
  t::Rng rng(5);
  auto db = t::random_db(rng, 12);
  for (auto type : {DocType::presentation, DocType::wordprocessing, DocType::spreadsheet}) {
    const PageFeature* prev = nullptr;
    for (const auto& p : pages_of_type(db, type)) {
      if (prev) {
        EXPECT_TRUE(std::tie(prev->doc_id, prev->page_index) < std::tie(p.doc_id, p.page_index));
      }
      prev = &p;
    }
  }
}

TEST(StoreProperties, RandomRoundTrip) {
  t::Rng rng(17);
  for (int round = 0; round < 30; ++round) {
    auto db = t::random_db(rng, 1 + round % 8);
    std::istringstream in(serialize_db(db));
    EXPECT_EQ(parse_db(in), db) << "round " << round;
  }
}

TEST(StoreProperties, RecordsSortedByDocAndPage) {
  t::Rng rng(19);
  auto db = t::random_db(rng, 10);
  std::istringstream in(serialize_db(db));
  std::string line;
  std::getline(in, line);
  std::pair<std::string, int> prev{"", 0};
  while (std::getline(in, line)) {
    auto j = json::parse(line);
    std::pair<std::string, int> key{j["doc_id"], j["page_index"]};
    EXPECT_LT(prev, key);
    prev = key;
  }
}

}  // namespace
}  // namespace layoutret
