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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layoutret/container.hpp"

namespace layoutret {

enum class ObjectKind {
  textbox,
  image,
  table,
  shape,
  footnote,
  header,
  footer,
  body_text,
  cell_styles,
  sheet_image,
  chart,
};

inline constexpr ObjectKind kAllObjectKinds[] = {
    ObjectKind::textbox,  ObjectKind::image,  ObjectKind::table,     ObjectKind::shape,
    ObjectKind::footnote, ObjectKind::header, ObjectKind::footer,    ObjectKind::body_text,
    ObjectKind::cell_styles, ObjectKind::sheet_image, ObjectKind::chart,
};

inline std::string_view to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::textbox: return "textbox";
    case ObjectKind::image: return "image";
    case ObjectKind::table: return "table";
    case ObjectKind::shape: return "shape";
    case ObjectKind::footnote: return "footnote";
    case ObjectKind::header: return "header";
    case ObjectKind::footer: return "footer";
    case ObjectKind::body_text: return "body_text";
    case ObjectKind::cell_styles: return "cell_styles";
    case ObjectKind::sheet_image: return "sheet_image";
    case ObjectKind::chart: return "chart";
  }
  return "unknown";
}

inline std::optional<ObjectKind> parse_object_kind(std::string_view s) {
  for (auto k : kAllObjectKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

// Lengths are centimeters on the canonical 1e-4 grid; origin top-left of the page.
struct Geometry {
  std::optional<double> x;
  std::optional<double> y;
  double width = 0;
  double height = 0;

  bool operator==(const Geometry&) const = default;
};

struct TextProps {
  std::vector<double> font_sizes;        // points
  std::vector<std::string> font_colors;  // RRGGBB, uppercase
  std::vector<std::string> font_names;   // case-folded

  bool empty() const { return font_sizes.empty() && font_colors.empty() && font_names.empty(); }
  void append(const TextProps& other) {
    font_sizes.insert(font_sizes.end(), other.font_sizes.begin(), other.font_sizes.end());
    font_colors.insert(font_colors.end(), other.font_colors.begin(), other.font_colors.end());
    font_names.insert(font_names.end(), other.font_names.begin(), other.font_names.end());
  }
  bool operator==(const TextProps&) const = default;
};

struct TableProps {
  int rows = 0;
  int cols = 0;
  bool operator==(const TableProps&) const = default;
};

struct ChartProps {
  std::string chart_type;  // plot family, case-folded, 3-D marker removed ("barchart")
  int dimensionality = 2;
  bool operator==(const ChartProps&) const = default;
};

// 1-based row/column, as in R1C1 notation.
struct CellRef {
  int row = 1;
  int col = 1;
  bool operator==(const CellRef&) const = default;
};

inline std::string to_string(const CellRef& ref) {
  return "R" + std::to_string(ref.row) + "C" + std::to_string(ref.col);
}

inline std::optional<CellRef> parse_cell_ref(std::string_view s) {
  const auto v = text::to_upper(text::trim(s));
  auto c = v.find('C');
  if (v.size() < 4 || v[0] != 'R' || c == std::string::npos || c < 2) return std::nullopt;
  auto row = text::parse_int(std::string_view(v).substr(1, c - 1));
  auto col = text::parse_int(std::string_view(v).substr(c + 1));
  if (!row || !col || *row < 1 || *col < 1) return std::nullopt;
  return CellRef{static_cast<int>(*row), static_cast<int>(*col)};
}

struct CellAnchor {
  CellRef from;
  CellRef to;
  bool operator==(const CellAnchor&) const = default;
};

struct CellStyleProps {
  std::vector<std::string> fill_patterns;  // case-folded patternType ("none", "solid", "gray0625")
  std::vector<std::string> fill_colors;    // RRGGBB
  std::vector<std::string> borders;        // case-folded border style
  bool operator==(const CellStyleProps&) const = default;
};

struct LayoutObject {
  ObjectKind kind = ObjectKind::textbox;
  std::optional<Geometry> geometry;
  std::optional<TextProps> text_props;
  std::optional<TableProps> table_props;
  std::optional<std::string> shape_type;
  std::optional<ChartProps> chart_props;
  std::optional<CellAnchor> cell_anchor;
  std::optional<CellStyleProps> cell_style_props;

  bool operator==(const LayoutObject&) const = default;
};

struct Margins {
  double upper = 0;
  double right = 0;
  double lower = 0;
  double left = 0;
  double header = 0;
  double footer = 0;
  double gutter = 0;
  double column = 0;  // spacing between text columns
  bool operator==(const Margins&) const = default;
};

struct PageGeometry {
  std::optional<double> width;   // cm; presentation and wordprocessing
  std::optional<double> height;  // cm; presentation and wordprocessing
  std::optional<int> columns;    // wordprocessing
  std::optional<Margins> margins;  // wordprocessing
  std::optional<int> zoom_scale;   // spreadsheet, percent
  // Spreadsheet used range (last row/column in use), the coordinate frame
  // for cell-anchored objects.
  std::optional<int> used_rows;
  std::optional<int> used_cols;

  bool operator==(const PageGeometry&) const = default;
};

struct PageFeature {
  std::string doc_id;
  DocType doc_type = DocType::unknown;
  int page_index = 1;
  PageGeometry page_geometry;
  std::vector<LayoutObject> objects;

  bool operator==(const PageFeature&) const = default;
};

}  // namespace layoutret
