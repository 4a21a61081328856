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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layoutret/error.hpp"
#include "layoutret/util/text.hpp"
#include "layoutret/xml.hpp"
#include "layoutret/zip.hpp"

namespace layoutret {

enum class DocType { presentation, wordprocessing, spreadsheet, unknown };

inline std::string_view to_string(DocType t) {
  switch (t) {
    case DocType::presentation: return "presentation";
    case DocType::wordprocessing: return "wordprocessing";
    case DocType::spreadsheet: return "spreadsheet";
    case DocType::unknown: return "unknown";
  }
  return "unknown";
}

// Accepts the canonical names plus the usual file extensions.
inline std::optional<DocType> parse_doc_type(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "presentation" || v == "pptx") return DocType::presentation;
  if (v == "wordprocessing" || v == "docx") return DocType::wordprocessing;
  if (v == "spreadsheet" || v == "xlsx") return DocType::spreadsheet;
  return std::nullopt;
}

namespace rel_type {
inline constexpr std::string_view kOfficeDocument = "/officeDocument";
inline constexpr std::string_view kSlide = "/slide";
inline constexpr std::string_view kSlideLayout = "/slideLayout";
inline constexpr std::string_view kSlideMaster = "/slideMaster";
inline constexpr std::string_view kTheme = "/theme";
inline constexpr std::string_view kImage = "/image";
inline constexpr std::string_view kStyles = "/styles";
inline constexpr std::string_view kHeader = "/header";
inline constexpr std::string_view kFooter = "/footer";
inline constexpr std::string_view kFootnotes = "/footnotes";
inline constexpr std::string_view kEndnotes = "/endnotes";
inline constexpr std::string_view kWorksheet = "/worksheet";
inline constexpr std::string_view kDrawing = "/drawing";
inline constexpr std::string_view kChart = "/chart";
}  // namespace rel_type

struct PackagePart {
  std::string name;
  std::string content_type;
  std::string bytes;  // fully decompressed payload
};

enum class TargetMode { internal, external };

struct Relationship {
  std::string id;
  std::string rel_type;
  std::string target;  // resolved part name, or the raw URI when external
  TargetMode mode = TargetMode::internal;

  // Relationship types are URIs that differ between the transitional and
  // strict namespaces; the trailing segment is what identifies them.
  bool is(std::string_view type_suffix) const { return text::ends_with(rel_type, type_suffix); }
};

// Canonical part name: forward slashes, no leading slash, case preserved.
inline std::string normalize_part_name(std::string_view raw) {
  std::string s(raw);
  for (auto& c : s)
    if (c == '\\') c = '/';
  std::size_t start = 0;
  while (start < s.size() && s[start] == '/') ++start;
  return s.substr(start);
}

// The relationship part that belongs to `part_name` ("" means the package).
inline std::string rels_part_name(std::string_view part_name) {
  auto slash = part_name.rfind('/');
  if (slash == std::string_view::npos) return "_rels/" + std::string(part_name) + ".rels";
  return std::string(part_name.substr(0, slash)) + "/_rels/" + std::string(part_name.substr(slash + 1)) + ".rels";
}

// Resolves a relative target against the directory of `source_part`.
// Returns nullopt when the result escapes the package root.
inline std::optional<std::string> resolve_target(std::string_view source_part, std::string_view target) {
  std::vector<std::string> segments;
  std::string_view rest = target;
  if (!rest.empty() && (rest.front() == '/' || rest.front() == '\\')) {
    rest.remove_prefix(1);
  } else {
    auto slash = source_part.rfind('/');
    if (slash != std::string_view::npos)
      for (auto& seg : text::split(source_part.substr(0, slash), '/')) segments.push_back(seg);
  }
  for (const auto& seg : text::split(normalize_part_name(rest), '/')) {
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") {
      if (segments.empty()) return std::nullopt;
      segments.pop_back();
      continue;
    }
    segments.push_back(seg);
  }
  std::string out;
  for (const auto& seg : segments) {
    if (!out.empty()) out += '/';
    out += seg;
  }
  return out;
}

class OpcPackage {
 public:
  const std::string& source_path() const { return source_path_; }
  const std::map<std::string, PackagePart>& parts() const { return parts_; }
  const std::map<std::string, std::string>& content_type_map() const { return content_types_; }
  // Part-level problems found while opening: corrupt members, dangling or
  // malformed relationships.
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool has_part(std::string_view name) const { return parts_.contains(std::string(name)); }

  const PackagePart* find_part(std::string_view name) const {
    auto it = parts_.find(std::string(name));
    return it == parts_.end() ? nullptr : &it->second;
  }

  const PackagePart& part(std::string_view name) const {
    if (const auto* p = find_part(name)) return *p;
    throw Error(ErrorCode::part_not_found, std::string(name));
  }

  std::string content_type_of(std::string_view name) const {
    auto it = content_types_.find(std::string(name));
    return it == content_types_.end() ? std::string() : it->second;
  }

 private:
  friend OpcPackage open_package_bytes(std::span<const unsigned char>, std::string);
  friend std::vector<Relationship> relationships_of(const OpcPackage&, std::string_view);

  std::vector<Relationship> parse_relationships(std::string_view owner, const PackagePart& rels,
                                                std::vector<std::string>* dangling) const;

  std::string source_path_;
  std::map<std::string, PackagePart> parts_;
  std::map<std::string, std::string> content_types_;
  std::vector<std::string> warnings_;
};

inline std::vector<Relationship> OpcPackage::parse_relationships(std::string_view owner, const PackagePart& rels,
                                                                 std::vector<std::string>* dangling) const {
  xml::Document doc;
  try {
    doc = xml::Document::parse(rels.bytes, rels.name);
  } catch (const Error& e) {
    throw Error(ErrorCode::malformed_relationship_xml, e.what());
  }
  auto root = doc.root();
  if (!root || root.local() != "Relationships")
    throw Error(ErrorCode::malformed_relationship_xml, rels.name + ": root is not Relationships");

  std::vector<Relationship> out;
  std::map<std::string, bool> seen;
  for (const auto& node : root.children("Relationship")) {
    auto id = node.attr("Id");
    auto type = node.attr("Type");
    auto target = node.attr("Target");
    if (!id || !type || !target)
      throw Error(ErrorCode::malformed_relationship_xml, rels.name + ": Relationship missing Id/Type/Target");
    if (seen[*id])
      throw Error(ErrorCode::malformed_relationship_xml, rels.name + ": duplicate Id " + *id);
    seen[*id] = true;

    Relationship r{*id, *type, *target, TargetMode::internal};
    if (text::iequals(node.attr("TargetMode").value_or(""), "External") ||
        target->find("://") != std::string::npos) {
      r.mode = TargetMode::external;
    } else if (auto resolved = resolve_target(owner, *target)) {
      r.target = *resolved;
      if (!has_part(r.target)) {
        if (dangling) dangling->push_back(rels.name + ": " + r.id + " -> " + r.target + " does not exist");
        continue;
      }
    } else {
      r.mode = TargetMode::external;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Returns the resolved relationships of `part_name` ("" for the package
// itself). Targets missing from the package were reported as warnings when
// the package was opened and are left out here.
inline std::vector<Relationship> relationships_of(const OpcPackage& pkg, std::string_view part_name) {
  const auto* rels = pkg.find_part(rels_part_name(part_name));
  if (!rels) return {};
  return pkg.parse_relationships(part_name, *rels, nullptr);
}

inline OpcPackage open_package_bytes(std::span<const unsigned char> data, std::string source_path) {
  auto archive = zip::read_archive(data);

  OpcPackage pkg;
  pkg.source_path_ = std::move(source_path);
  pkg.warnings_ = std::move(archive.warnings);
  for (auto& m : archive.members) {
    auto name = normalize_part_name(m.name);
    if (pkg.parts_.contains(name)) {
      pkg.warnings_.push_back(name + ": duplicate part name, later copy ignored");
      continue;
    }
    pkg.parts_.emplace(name, PackagePart{name, {}, std::move(m.bytes)});
  }

  const auto* ct_part = pkg.find_part("[Content_Types].xml");
  if (!ct_part) throw Error(ErrorCode::missing_content_types, pkg.source_path_);
  auto ct = xml::Document::parse(ct_part->bytes, "[Content_Types].xml");
  std::map<std::string, std::string> defaults;
  std::map<std::string, std::string> overrides;
  for (const auto& d : ct.root().children("Default"))
    if (auto ext = d.attr("Extension"); ext) defaults[text::to_lower(*ext)] = d.attr("ContentType").value_or("");
  for (const auto& o : ct.root().children("Override"))
    if (auto name = o.attr("PartName"); name) overrides[normalize_part_name(*name)] = o.attr("ContentType").value_or("");

  for (auto& [name, part] : pkg.parts_) {
    if (auto it = overrides.find(name); it != overrides.end()) {
      part.content_type = it->second;
    } else {
      auto dot = name.rfind('.');
      if (dot != std::string::npos)
        if (auto it2 = defaults.find(text::to_lower(name.substr(dot + 1))); it2 != defaults.end())
          part.content_type = it2->second;
    }
    if (!part.content_type.empty()) pkg.content_types_[name] = part.content_type;
  }

  for (const auto& [name, part] : pkg.parts_) {
    if (!text::ends_with(name, ".rels")) continue;
    // "a/_rels/b.xml.rels" belongs to "a/b.xml"; "_rels/.rels" to the package.
    auto marker = name.rfind("_rels/");
    if (marker == std::string::npos) continue;
    std::string owner = name.substr(0, marker) + name.substr(marker + 6, name.size() - marker - 6 - 5);
    try {
      pkg.parse_relationships(owner, part, &pkg.warnings_);
    } catch (const Error& e) {
      pkg.warnings_.push_back(e.what());
    }
  }
  return pkg;
}

inline OpcPackage open_package(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return open_package_bytes(data, path.string());
}

inline std::optional<Relationship> first_relationship(const OpcPackage& pkg, std::string_view part_name,
                                                      std::string_view type_suffix) {
  for (auto& r : relationships_of(pkg, part_name))
    if (r.mode == TargetMode::internal && r.is(type_suffix)) return r;
  return std::nullopt;
}

inline std::optional<std::string> main_part_name(const OpcPackage& pkg) {
  if (auto r = first_relationship(pkg, "", rel_type::kOfficeDocument)) return r->target;
  return std::nullopt;
}

inline DocType detect_doc_type(const OpcPackage& pkg) {
  auto main = main_part_name(pkg);
  if (!main) return DocType::unknown;
  const auto ct = text::to_lower(pkg.content_type_of(*main));
  if (!text::ends_with(ct, ".main+xml")) return DocType::unknown;
  if (ct.find("presentationml") != std::string::npos || ct.find("ms-powerpoint") != std::string::npos)
    return DocType::presentation;
  if (ct.find("wordprocessingml") != std::string::npos || ct.find("ms-word") != std::string::npos)
    return DocType::wordprocessing;
  if (ct.find("spreadsheetml") != std::string::npos || ct.find("ms-excel") != std::string::npos)
    return DocType::spreadsheet;
  return DocType::unknown;
}

}  // namespace layoutret
