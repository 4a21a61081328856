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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "layoutret/container.hpp"
#include "layoutret/feature.hpp"
#include "layoutret/units.hpp"
#include "layoutret/util/text.hpp"
#include "layoutret/xml.hpp"

namespace layoutret::extract {

struct ExtractResult {
  std::vector<PageFeature> pages;
  std::vector<std::string> warnings;  // per-page parse failures and similar
};

// Parses each part at most once per extraction run.
class PartCache {
 public:
  explicit PartCache(const OpcPackage& pkg) : pkg_(pkg) {}

  const xml::Document& doc(const std::string& part_name) {
    auto it = docs_.find(part_name);
    if (it != docs_.end()) return it->second;
    auto parsed = xml::Document::parse(pkg_.part(part_name).bytes, part_name);
    return docs_.emplace(part_name, std::move(parsed)).first->second;
  }

  xml::Node root(const std::string& part_name) { return doc(part_name).root(); }

  const std::vector<Relationship>& rels(const std::string& part_name) {
    auto it = rels_.find(part_name);
    if (it != rels_.end()) return it->second;
    return rels_.emplace(part_name, relationships_of(pkg_, part_name)).first->second;
  }

  std::optional<std::string> target(const std::string& part_name, std::string_view rel_id) {
    for (const auto& r : rels(part_name))
      if (r.id == rel_id && r.mode == TargetMode::internal) return r.target;
    return std::nullopt;
  }

  std::optional<std::string> first_target(const std::string& part_name, std::string_view type_suffix) {
    for (const auto& r : rels(part_name))
      if (r.mode == TargetMode::internal && r.is(type_suffix)) return r.target;
    return std::nullopt;
  }

  const OpcPackage& package() const { return pkg_; }

 private:
  const OpcPackage& pkg_;
  std::map<std::string, xml::Document> docs_;
  std::map<std::string, std::vector<Relationship>> rels_;
};

inline double emu_cm(long long emu) { return text::canonical(emu_to_cm(emu)); }
inline double twip_cm(long long twip) { return text::canonical(twip_to_cm(twip)); }

}  // namespace layoutret::extract
