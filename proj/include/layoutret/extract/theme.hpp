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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "layoutret/container.hpp"
#include "layoutret/util/text.hpp"
#include "layoutret/xml.hpp"

namespace layoutret::extract {

struct Theme {
  std::map<std::string, std::string> scheme_colors;  // dk1, lt1, accent1, ... -> RRGGBB
  std::string major_latin;
  std::string minor_latin;
};

inline Theme parse_theme(const xml::Node& root) {
  Theme theme;
  auto elements = root.child("themeElements");
  for (const auto& entry : elements.child("clrScheme").elements()) {
    std::optional<std::string> rgb;
    if (auto s = entry.child("srgbClr")) rgb = text::normalize_hex_color(s.attr("val").value_or(""));
    else if (auto sys = entry.child("sysClr")) rgb = text::normalize_hex_color(sys.attr("lastClr").value_or(""));
    if (rgb) theme.scheme_colors[std::string(entry.local())] = *rgb;
  }
  auto fonts = elements.child("fontScheme");
  theme.major_latin = fonts.path("majorFont/latin").attr("typeface").value_or("");
  theme.minor_latin = fonts.path("minorFont/latin").attr("typeface").value_or("");
  return theme;
}

inline std::optional<Theme> load_theme(const OpcPackage& pkg, std::string_view owner_part) {
  auto rel = first_relationship(pkg, owner_part, rel_type::kTheme);
  if (!rel) return std::nullopt;
  auto doc = xml::Document::parse(pkg.part(rel->target).bytes, rel->target);
  return parse_theme(doc.root());
}

// Maps the logical scheme names used in text (tx1, bg1, ...) onto theme slots.
struct ColorMap {
  std::map<std::string, std::string> mapping{
      {"bg1", "lt1"}, {"tx1", "dk1"}, {"bg2", "lt2"}, {"tx2", "dk2"},
  };

  static ColorMap from_node(const xml::Node& clr_map) {
    ColorMap map;
    for (const char* key : {"bg1", "tx1", "bg2", "tx2", "accent1", "accent2", "accent3", "accent4",
                            "accent5", "accent6", "hlink", "folHlink"})
      if (auto v = clr_map.attr(key)) map.mapping[key] = *v;
    return map;
  }
};

inline std::optional<std::string> preset_color(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> kPresets{
      {"black", "000000"}, {"white", "FFFFFF"},  {"red", "FF0000"},    {"green", "008000"},
      {"blue", "0000FF"},  {"yellow", "FFFF00"}, {"cyan", "00FFFF"},   {"magenta", "FF00FF"},
      {"gray", "808080"},  {"grey", "808080"},   {"orange", "FFA500"}, {"purple", "800080"},
      {"navy", "000080"},  {"lime", "00FF00"},   {"silver", "C0C0C0"}, {"maroon", "800000"},
  };
  auto it = kPresets.find(text::to_lower(name));
  if (it == kPresets.end()) return std::nullopt;
  return it->second;
}

// Resolves the DrawingML color choice held by `parent` (e.g. a:solidFill).
// Luminance modifiers on scheme colors are not applied: the base theme
// color is reported.
inline std::optional<std::string> resolve_drawing_color(const xml::Node& parent, const Theme* theme,
                                                        const ColorMap& map) {
  if (!parent) return std::nullopt;
  if (auto s = parent.child("srgbClr")) return text::normalize_hex_color(s.attr("val").value_or(""));
  if (auto sys = parent.child("sysClr")) return text::normalize_hex_color(sys.attr("lastClr").value_or(""));
  if (auto p = parent.child("prstClr")) return preset_color(p.attr("val").value_or(""));
  if (auto sc = parent.child("schemeClr")) {
    if (!theme) return std::nullopt;
    std::string key = sc.attr("val").value_or("");
    if (auto it = map.mapping.find(key); it != map.mapping.end()) key = it->second;
    if (auto it = theme->scheme_colors.find(key); it != theme->scheme_colors.end()) return it->second;
    return std::nullopt;
  }
  if (auto scrgb = parent.child("scrgbClr")) {
    auto channel = [&](const char* name) {
      double pct = scrgb.attr_double(name).value_or(0) / 100000.0;
      int v = static_cast<int>(std::lround(std::clamp(pct, 0.0, 1.0) * 255));
      static constexpr char kHex[] = "0123456789ABCDEF";
      return std::string{kHex[v >> 4], kHex[v & 15]};
    };
    return channel("r") + channel("g") + channel("b");
  }
  return std::nullopt;
}

// Theme font references (+mj-lt, +mn-lt) resolve to the theme's latin faces.
inline std::optional<std::string> resolve_typeface(std::string_view typeface, const Theme* theme) {
  if (typeface.empty()) return std::nullopt;
  if (typeface.front() == '+') {
    if (!theme) return std::nullopt;
    const auto& face = typeface.starts_with("+mj") ? theme->major_latin : theme->minor_latin;
    if (face.empty()) return std::nullopt;
    return text::to_lower(face);
  }
  return text::to_lower(typeface);
}

// SpreadsheetML theme indices list the light/dark pairs swapped relative to
// the clrScheme element order.
inline std::optional<std::string> spreadsheet_theme_color(int index, const Theme* theme) {
  static constexpr std::array<std::string_view, 12> kSlots{
      "lt1", "dk1", "lt2", "dk2", "accent1", "accent2", "accent3", "accent4", "accent5", "accent6",
      "hlink", "folHlink"};
  if (!theme || index < 0 || index >= static_cast<int>(kSlots.size())) return std::nullopt;
  auto it = theme->scheme_colors.find(std::string(kSlots[static_cast<std::size_t>(index)]));
  if (it == theme->scheme_colors.end()) return std::nullopt;
  return it->second;
}

}  // namespace layoutret::extract
