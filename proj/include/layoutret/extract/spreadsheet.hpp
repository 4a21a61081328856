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
#include <optional>
#include <string>
#include <vector>

#include "layoutret/extract/common.hpp"
#include "layoutret/extract/theme.hpp"

namespace layoutret::extract {

namespace xlsx_detail {

// Legacy indexed palette (indices 0-63, plus system foreground/background).
inline constexpr std::array<std::string_view, 66> kIndexedColors{
    "000000", "FFFFFF", "FF0000", "00FF00", "0000FF", "FFFF00", "FF00FF", "00FFFF", "000000", "FFFFFF", "FF0000",
    "00FF00", "0000FF", "FFFF00", "FF00FF", "00FFFF", "800000", "008000", "000080", "808000", "800080", "008080",
    "C0C0C0", "808080", "9999FF", "993366", "FFFFCC", "CCFFFF", "660066", "FF8080", "0066CC", "CCCCFF", "000080",
    "FF00FF", "FFFF00", "00FFFF", "800080", "800000", "008080", "0000FF", "00CCFF", "CCFFFF", "CCFFCC", "FFFF99",
    "99CCFF", "FF99CC", "CC99FF", "FFCC99", "3366FF", "33CCCC", "99CC00", "FFCC00", "FF9900", "FF6600", "666699",
    "969696", "003366", "339966", "003300", "333300", "993300", "993366", "333399", "333333", "000000", "FFFFFF",
};

struct FontStyle {
  std::optional<double> size;
  std::optional<std::string> name;
};

struct FillStyle {
  std::string pattern = "none";
  std::optional<std::string> color;
};

struct CellFormat {
  std::size_t font = 0, fill = 0, border = 0;
};

struct Styles {
  std::vector<FontStyle> fonts;
  std::vector<FillStyle> fills;
  std::vector<std::string> borders;
  std::vector<CellFormat> formats;
};

// "AB12" -> {row 12, col 28}
inline std::optional<CellRef> parse_a1(std::string_view ref) {
  std::size_t i = 0;
  int col = 0;
  while (i < ref.size() && (ref[i] == '$' || std::isalpha(static_cast<unsigned char>(ref[i])))) {
    if (ref[i] != '$') col = col * 26 + (std::toupper(static_cast<unsigned char>(ref[i])) - 'A' + 1);
    ++i;
  }
  if (i < ref.size() && ref[i] == '$') ++i;
  auto row = text::parse_int(ref.substr(i));
  if (col == 0 || !row || *row < 1) return std::nullopt;
  return CellRef{static_cast<int>(*row), col};
}

// Plot element name -> (family, dimensionality): "bar3DChart" -> ("barchart", 3).
// A bare family name ("bar") is completed to its element form.
inline ChartProps chart_props_of(std::string_view element) {
  auto name = text::to_lower(element);
  int dim = 2;
  if (auto pos = name.find("3d"); pos != std::string::npos) {
    name.erase(pos, 2);
    dim = 3;
  }
  if (!text::ends_with(name, "chart")) name += "chart";
  return {name, dim};
}

// Inverse of chart_props_of: ("barchart", 3) -> "bar3dchart".
inline std::string chart_element_name(const ChartProps& props) {
  if (props.dimensionality != 3) return props.chart_type;
  auto base = props.chart_type.substr(0, props.chart_type.size() - 5);
  return base + "3dchart";
}

}  // namespace xlsx_detail

class SpreadsheetExtractor {
 public:
  SpreadsheetExtractor(const OpcPackage& pkg, std::string doc_id) : cache_(pkg), doc_id_(std::move(doc_id)) {}

  ExtractResult run() {
    ExtractResult result;
    auto main = main_part_name(cache_.package());
    if (!main) throw Error(ErrorCode::unsupported_type, "no main document part");
    main_ = *main;
    if (auto theme = cache_.first_target(main_, rel_type::kTheme)) theme_ = parse_theme(cache_.root(*theme));
    if (auto styles = cache_.first_target(main_, rel_type::kStyles)) parse_styles(cache_.root(*styles));

    int index = 0;
    for (const auto& sheet : cache_.root(main_).path("sheets").children("sheet")) {
      auto rid = sheet.attr_local("id", true).value_or("");
      const Relationship* rel = nullptr;
      for (const auto& r : cache_.rels(main_))
        if (r.id == rid) rel = &r;
      // Chartsheets and dialog sheets are not worksheets.
      if (!rel || !rel->is(rel_type::kWorksheet) || rel->mode != TargetMode::internal) continue;
      ++index;
      try {
        PageFeature page{doc_id_, DocType::spreadsheet, index, {}, {}};
        extract_sheet(rel->target, page);
        result.pages.push_back(std::move(page));
      } catch (const std::exception& e) {
        result.warnings.push_back(doc_id_ + ": sheet " + std::to_string(index) + ": " + e.what());
      }
    }
    return result;
  }

 private:
  std::optional<std::string> color_of(const xml::Node& c) const {
    if (!c) return std::nullopt;
    if (auto rgb = c.attr("rgb")) return text::normalize_hex_color(*rgb);
    if (auto th = c.attr_int("theme")) return spreadsheet_theme_color(static_cast<int>(*th), theme_ ? &*theme_ : nullptr);
    if (auto idx = c.attr_int("indexed")) {
      if (*idx >= 0 && static_cast<std::size_t>(*idx) < palette_.size()) return palette_[static_cast<std::size_t>(*idx)];
    }
    return std::nullopt;
  }

  void parse_styles(const xml::Node& root) {
    for (auto c : xlsx_detail::kIndexedColors) palette_.emplace_back(c);
    if (auto custom = root.path("colors/indexedColors")) {
      std::size_t i = 0;
      for (const auto& rgb : custom.children("rgbColor")) {
        if (auto hex = text::normalize_hex_color(rgb.attr("rgb").value_or("")); hex && i < palette_.size()) palette_[i] = *hex;
        ++i;
      }
    }
    for (const auto& f : root.path("fonts").children("font")) {
      xlsx_detail::FontStyle font;
      font.size = f.child("sz").attr_double("val");
      if (auto n = f.child("name").attr("val")) font.name = text::to_lower(*n);
      styles_.fonts.push_back(font);
    }
    for (const auto& f : root.path("fills").children("fill")) {
      xlsx_detail::FillStyle fill;
      if (auto pf = f.child("patternFill")) {
        fill.pattern = text::to_lower(pf.attr("patternType").value_or("none"));
        if (fill.pattern != "none") fill.color = color_of(pf.child("fgColor"));
      } else if (f.child("gradientFill")) {
        fill.pattern = "gradient";
      }
      styles_.fills.push_back(fill);
    }
    for (const auto& b : root.path("borders").children("border")) {
      std::string style = "none";
      for (const char* edge : {"left", "right", "top", "bottom"}) {
        auto s = b.child(edge).attr("style");
        if (s && *s != "none") {
          style = text::to_lower(*s);
          break;
        }
      }
      styles_.borders.push_back(style);
    }
    for (const auto& xf : root.path("cellXfs").children("xf")) {
      xlsx_detail::CellFormat fmt;
      fmt.font = static_cast<std::size_t>(std::max<long long>(0, xf.attr_int("fontId").value_or(0)));
      fmt.fill = static_cast<std::size_t>(std::max<long long>(0, xf.attr_int("fillId").value_or(0)));
      fmt.border = static_cast<std::size_t>(std::max<long long>(0, xf.attr_int("borderId").value_or(0)));
      styles_.formats.push_back(fmt);
    }
  }

  void extract_sheet(const std::string& part, PageFeature& page) {
    auto sheet = cache_.root(part);
    int zoom = static_cast<int>(sheet.path("sheetViews/sheetView").attr_int("zoomScale").value_or(100));
    page.page_geometry.zoom_scale = zoom > 0 ? zoom : 100;

    int max_row = 1, max_col = 1;
    auto extend = [&](const CellRef& r) {
      max_row = std::max(max_row, r.row);
      max_col = std::max(max_col, r.col);
    };
    if (auto dim = sheet.child("dimension").attr("ref")) {
      auto colon = dim->find(':');
      if (auto end = xlsx_detail::parse_a1(colon == std::string::npos ? *dim : dim->substr(colon + 1))) extend(*end);
    }

    TextProps fonts;
    CellStyleProps cell_styles;
    std::size_t cells = 0;
    for (const auto& row : sheet.path("sheetData").children("row")) {
      for (const auto& c : row.children("c")) {
        ++cells;
        if (auto ref = xlsx_detail::parse_a1(c.attr("r").value_or(""))) extend(*ref);
        const auto s = static_cast<std::size_t>(std::max<long long>(0, c.attr_int("s").value_or(0)));
        if (s >= styles_.formats.size()) continue;
        const auto& fmt = styles_.formats[s];
        if (fmt.font < styles_.fonts.size()) {
          const auto& font = styles_.fonts[fmt.font];
          if (font.size) fonts.font_sizes.push_back(*font.size);
          if (font.name) fonts.font_names.push_back(*font.name);
        }
        if (fmt.fill < styles_.fills.size()) {
          const auto& fill = styles_.fills[fmt.fill];
          cell_styles.fill_patterns.push_back(fill.pattern);
          if (fill.color) cell_styles.fill_colors.push_back(*fill.color);
        }
        if (fmt.border < styles_.borders.size()) cell_styles.borders.push_back(styles_.borders[fmt.border]);
      }
    }
    if (cells > 0) {
      LayoutObject obj{ObjectKind::cell_styles};
      obj.text_props = std::move(fonts);
      obj.cell_style_props = std::move(cell_styles);
      page.objects.push_back(std::move(obj));
    }

    auto rid = sheet.child("drawing").attr_local("id", true);
    auto drawing = rid ? cache_.target(part, *rid) : std::nullopt;
    if (drawing) {
      for (const auto& anchor : cache_.root(*drawing).elements()) {
        auto a = anchor_of(anchor);
        if (!a) continue;
        extend(a->from);
        extend(a->to);
        if (!anchor.find_all("pic").empty()) {
          LayoutObject img{ObjectKind::sheet_image};
          img.cell_anchor = a;
          page.objects.push_back(std::move(img));
        }
        for (const auto& frame : anchor.find_all("graphicFrame")) {
          auto chart_rid = frame.path("graphic/graphicData/chart").attr_local("id", true);
          auto chart_part = chart_rid ? cache_.target(*drawing, *chart_rid) : std::nullopt;
          if (!chart_part) continue;
          auto props = chart_type(*chart_part);
          if (!props) continue;
          LayoutObject chart{ObjectKind::chart};
          chart.chart_props = props;
          chart.cell_anchor = a;
          page.objects.push_back(std::move(chart));
        }
      }
    }
    page.page_geometry.used_rows = max_row;
    page.page_geometry.used_cols = max_col;
  }

  static std::optional<CellAnchor> anchor_of(const xml::Node& anchor) {
    auto cell = [](const xml::Node& n) -> std::optional<CellRef> {
      auto col = text::parse_int(n.child("col").text());
      auto row = text::parse_int(n.child("row").text());
      if (!col || !row) return std::nullopt;
      return CellRef{static_cast<int>(*row) + 1, static_cast<int>(*col) + 1};
    };
    if (anchor.local() == "twoCellAnchor") {
      auto from = cell(anchor.child("from"));
      auto to = cell(anchor.child("to"));
      if (from && to) return CellAnchor{*from, *to};
    } else if (anchor.local() == "oneCellAnchor") {
      if (auto from = cell(anchor.child("from"))) return CellAnchor{*from, *from};
    }
    return std::nullopt;
  }

  std::optional<ChartProps> chart_type(const std::string& part) {
    auto plot = cache_.root(part).path("chart/plotArea");
    for (const auto& e : plot.elements())
      if (text::ends_with(e.local(), "Chart")) return xlsx_detail::chart_props_of(e.local());
    return std::nullopt;
  }

  PartCache cache_;
  std::string doc_id_;
  std::string main_;
  std::optional<Theme> theme_;
  std::vector<std::string> palette_;
  xlsx_detail::Styles styles_;
};

inline ExtractResult extract_spreadsheet(const OpcPackage& pkg, const std::string& doc_id) {
  return SpreadsheetExtractor(pkg, doc_id).run();
}

}  // namespace layoutret::extract
