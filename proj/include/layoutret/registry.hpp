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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layoutret/error.hpp"
#include "layoutret/feature.hpp"
#include "layoutret/util/text.hpp"

namespace layoutret {

// What a query item targets: the page itself or one kind of layout object.
enum class QueryKind {
  page_geometry,
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

inline std::string_view to_string(QueryKind k) {
  switch (k) {
    case QueryKind::page_geometry: return "page_geometry";
    case QueryKind::textbox: return "textbox";
    case QueryKind::image: return "image";
    case QueryKind::table: return "table";
    case QueryKind::shape: return "shape";
    case QueryKind::footnote: return "footnote";
    case QueryKind::header: return "header";
    case QueryKind::footer: return "footer";
    case QueryKind::body_text: return "body_text";
    case QueryKind::cell_styles: return "cell_styles";
    case QueryKind::sheet_image: return "sheet_image";
    case QueryKind::chart: return "chart";
  }
  return "unknown";
}

inline std::optional<ObjectKind> object_kind_of(QueryKind k) {
  if (k == QueryKind::page_geometry) return std::nullopt;
  return parse_object_kind(to_string(k));
}

enum class Method { em, am1, am2, am3, am4 };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::em: return "EM";
    case Method::am1: return "AM-1";
    case Method::am2: return "AM-2";
    case Method::am3: return "AM-3";
    case Method::am4: return "AM-4";
  }
  return "?";
}

enum class ValueClass { number, integer, hex_color, text, cell_ref, chart_type };

// Upper bound of an AM-3 field: a constant, or the width/height of the
// candidate page resolved at scoring time.
enum class BoundKind { none, fixed, page_width, page_height };

struct Bound {
  BoundKind kind = BoundKind::none;
  double value = 0;
};

struct QueryFieldSpec {
  DocType doc_type;
  QueryKind kind;
  std::string_view field;
  ValueClass value_class;
  Method method;
  bool is_list = false;    // comma-separated multi-value (AM-1 fields)
  bool is_length = false;  // converted from inches when the query says so
  std::optional<double> bound_min;
  Bound bound_max;
  std::string_view example;  // sample value as documented for the row
};

namespace registry_detail {

constexpr Bound fixed(double v) { return {BoundKind::fixed, v}; }
constexpr Bound kPageWidth{BoundKind::page_width, 0};
constexpr Bound kPageHeight{BoundKind::page_height, 0};
constexpr Bound kNoBound{};

constexpr DocType W = DocType::wordprocessing;
constexpr DocType P = DocType::presentation;
constexpr DocType S = DocType::spreadsheet;

using K = QueryKind;
using V = ValueClass;
using M = Method;

inline constexpr double kDocxPageMax = 55.87;
inline constexpr double kSlideMin = 2.54;
inline constexpr double kSlideMax = 142.24;
inline constexpr double kZoomMin = 10;
inline constexpr double kZoomMax = 400;

// clang-format off
inline const std::vector<QueryFieldSpec> kRows = {
    // Wordprocessing page layout
    {W, K::page_geometry, "height",        V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "27.97"},
    {W, K::page_geometry, "width",         V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "21.59"},
    {W, K::page_geometry, "columns",       V::integer, M::am3, false, false, 0.0, fixed(kDocxPageMax), "2"},
    {W, K::page_geometry, "column_margin", V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "0.5"},
    {W, K::page_geometry, "upper_margin",  V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "2.54"},
    {W, K::page_geometry, "right_margin",  V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "3.17"},
    {W, K::page_geometry, "lower_margin",  V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "2.54"},
    {W, K::page_geometry, "left_margin",   V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "3.17"},
    {W, K::page_geometry, "header_margin", V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "1.27"},
    {W, K::page_geometry, "footer_margin", V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "1.27"},
    {W, K::page_geometry, "gutter_margin", V::number,  M::am3, false, true,  0.0, fixed(kDocxPageMax), "2.51"},
    // Wordprocessing text runs
    {W, K::body_text, "font_size",  V::number,    M::am1, true, false, {}, kNoBound, "12, 11, 12"},
    {W, K::body_text, "font_color", V::hex_color, M::am1, true, false, {}, kNoBound, "000000, 0070C0, 000000"},
    {W, K::body_text, "font_name",  V::text,      M::am1, true, false, {}, kNoBound, "Times New Roman, Arial, Calibri"},
    {W, K::footnote,  "font_size",  V::number,    M::am1, true, false, {}, kNoBound, "20"},
    {W, K::footnote,  "font_color", V::hex_color, M::am1, true, false, {}, kNoBound, "FF0000"},
    {W, K::footnote,  "font_name",  V::text,      M::am1, true, false, {}, kNoBound, "Candara"},
    {W, K::header,    "font_size",  V::number,    M::am1, true, false, {}, kNoBound, "10"},
    {W, K::header,    "font_color", V::hex_color, M::am1, true, false, {}, kNoBound, "000000"},
    {W, K::header,    "font_name",  V::text,      M::am1, true, false, {}, kNoBound, "Verdana"},
    {W, K::footer,    "font_size",  V::number,    M::am1, true, false, {}, kNoBound, "10"},
    {W, K::footer,    "font_color", V::hex_color, M::am1, true, false, {}, kNoBound, "165189"},
    {W, K::footer,    "font_name",  V::text,      M::am1, true, false, {}, kNoBound, "Verdana"},
    // Wordprocessing images and tables
    {W, K::image, "height",     V::number,    M::am3, false, true,  0.0, kPageHeight, "18.99"},
    {W, K::image, "width",      V::number,    M::am3, false, true,  0.0, kPageWidth,  "14.18"},
    {W, K::table, "rows",       V::integer,   M::em,  false, false, {},  kNoBound,    "3"},
    {W, K::table, "cols",       V::integer,   M::em,  false, false, {},  kNoBound,    "4"},
    {W, K::table, "font_size",  V::number,    M::am1, true,  false, {},  kNoBound,    "12, 10"},
    {W, K::table, "font_color", V::hex_color, M::am1, true,  false, {},  kNoBound,    "000000, 000000"},
    {W, K::table, "font_name",  V::text,      M::am1, true,  false, {},  kNoBound,    "Arial, Consolas"},
    // Presentation slide size
    {P, K::page_geometry, "height", V::number, M::am3, false, true, kSlideMin, fixed(kSlideMax), "19.05"},
    {P, K::page_geometry, "width",  V::number, M::am3, false, true, kSlideMin, fixed(kSlideMax), "25.4"},
    // Presentation text boxes (font color belongs here, not to images)
    {P, K::textbox, "x",          V::number,    M::am4, false, true,  {},  kNoBound,    "1.06"},
    {P, K::textbox, "y",          V::number,    M::am4, false, true,  {},  kNoBound,    "4.02"},
    {P, K::textbox, "height",     V::number,    M::am3, false, true,  0.0, kPageHeight, "12.90"},
    {P, K::textbox, "width",      V::number,    M::am3, false, true,  0.0, kPageWidth,  "23.28"},
    {P, K::textbox, "font_name",  V::text,      M::am1, true,  false, {},  kNoBound,    "Times New Roman"},
    {P, K::textbox, "font_color", V::hex_color, M::am1, true,  false, {},  kNoBound,    "000000, FFFFFFFF"},
    // Presentation images
    {P, K::image, "x",      V::number, M::am4, false, true, {},  kNoBound,    "3.25"},
    {P, K::image, "y",      V::number, M::am4, false, true, {},  kNoBound,    "4.55"},
    {P, K::image, "height", V::number, M::am3, false, true, 0.0, kPageHeight, "2.66"},
    {P, K::image, "width",  V::number, M::am3, false, true, 0.0, kPageWidth,  "7.22"},
    // Presentation tables
    {P, K::table, "x",         V::number,  M::am4, false, true,  {},  kNoBound,    "5.26"},
    {P, K::table, "y",         V::number,  M::am4, false, true,  {},  kNoBound,    "1.26"},
    {P, K::table, "height",    V::number,  M::am3, false, true,  0.0, kPageHeight, "2.49"},
    {P, K::table, "width",     V::number,  M::am3, false, true,  0.0, kPageWidth,  "9.15"},
    {P, K::table, "rows",      V::integer, M::em,  false, false, {},  kNoBound,    "3"},
    {P, K::table, "cols",      V::integer, M::em,  false, false, {},  kNoBound,    "2"},
    {P, K::table, "font_name", V::text,    M::am1, true,  false, {},  kNoBound,    "Times New Roman"},
    // Presentation shapes
    {P, K::shape, "font_color", V::hex_color, M::am1, true,  false, {},  kNoBound,    "FF0000"},
    {P, K::shape, "shape_type", V::text,      M::em,  false, false, {},  kNoBound,    "LeftRightArrow"},
    {P, K::shape, "x",          V::number,    M::am4, false, true,  {},  kNoBound,    "10.10"},
    {P, K::shape, "y",          V::number,    M::am4, false, true,  {},  kNoBound,    "15.32"},
    {P, K::shape, "height",     V::number,    M::am3, false, true,  0.0, kPageHeight, "5.12"},
    // Spreadsheet
    {S, K::page_geometry, "zoom_scale", V::integer, M::am3, false, false, kZoomMin, fixed(kZoomMax), "85"},
    {S, K::cell_styles, "font_size",    V::number,    M::am1, true, false, {}, kNoBound, "12, 11, 11"},
    {S, K::cell_styles, "font_name",    V::text,      M::am1, true, false, {}, kNoBound, "CG Times (WN), Calibri, Calibri"},
    {S, K::cell_styles, "fill_pattern", V::text,      M::am1, true, false, {}, kNoBound, "None, yellow, yellow"},
    {S, K::cell_styles, "fill_color",   V::hex_color, M::am1, true, false, {}, kNoBound, "FFFF00"},
    {S, K::cell_styles, "border",       V::text,      M::am1, true, false, {}, kNoBound, "double, dotted, thin, none"},
    {S, K::sheet_image, "from",       V::cell_ref,   M::am4, false, false, {}, kNoBound, "R1C5"},
    {S, K::sheet_image, "to",         V::cell_ref,   M::am4, false, false, {}, kNoBound, "R5C10"},
    {S, K::chart,       "chart_type", V::chart_type, M::am2, false, false, {}, kNoBound, "barChart"},
    {S, K::chart,       "from",       V::cell_ref,   M::am4, false, false, {}, kNoBound, "R8C9"},
    {S, K::chart,       "to",         V::cell_ref,   M::am4, false, false, {}, kNoBound, "R21C15"},
};
// clang-format on

inline std::string canonical_token(std::string_view s) {
  auto out = text::to_lower(text::trim(s));
  for (auto& c : out)
    if (c == ' ' || c == '-' || c == '.') c = '_';
  return out;
}

}  // namespace registry_detail

inline std::span<const QueryFieldSpec> registry() { return registry_detail::kRows; }

// Kind names: the canonical names plus the abbreviations used in the
// documented field table (SWH, PL, ZS, TB, IMG, TBL, SH, TXT, FNT, HDR, FTR).
inline std::optional<QueryKind> parse_query_kind(std::string_view raw, DocType doc_type) {
  const auto s = registry_detail::canonical_token(raw);
  if (s == "page_geometry" || s == "page_layout" || s == "pl" || s == "swh" || s == "slide_size" || s == "zs" ||
      s == "page")
    return QueryKind::page_geometry;
  if (s == "textbox" || s == "text_box" || s == "tb") return QueryKind::textbox;
  if (s == "image" || s == "img" || s == "picture")
    return doc_type == DocType::spreadsheet ? QueryKind::sheet_image : QueryKind::image;
  if (s == "sheet_image") return QueryKind::sheet_image;
  if (s == "table" || s == "tbl") return QueryKind::table;
  if (s == "shape" || s == "sh") return QueryKind::shape;
  if (s == "body_text" || s == "text" || s == "txt") return QueryKind::body_text;
  if (s == "footnote" || s == "fnt") return QueryKind::footnote;
  if (s == "header" || s == "hdr") return QueryKind::header;
  if (s == "footer" || s == "ftr") return QueryKind::footer;
  if (s == "cell_styles" || s == "cell" || s == "cells") return QueryKind::cell_styles;
  if (s == "chart" || s == "cht") return QueryKind::chart;
  return std::nullopt;
}

inline std::string canonical_field_name(std::string_view raw, QueryKind kind) {
  auto s = registry_detail::canonical_token(raw);
  if (s == "row") return "rows";
  if (s == "column" || s == "col") return kind == QueryKind::page_geometry ? "columns" : "cols";
  if (s == "coordinate_x") return "x";
  if (s == "coordinate_y") return "y";
  if (s == "top_margin") return "upper_margin";
  if (s == "bottom_margin") return "lower_margin";
  if (s == "zoom" || s == "zs") return "zoom_scale";
  if (s == "fts" || s == "size") return "font_size";
  if (s == "ftn" || s == "font") return "font_name";
  if (s == "color") return "font_color";
  if (s == "fip") return "fill_pattern";
  if (s == "fic") return "fill_color";
  if (s == "brd") return "border";
  if (s == "imgf" || s == "chtf") return "from";
  if (s == "imgt" || s == "chtt") return "to";
  if (s == "chty" || s == "type") return "chart_type";
  return s;
}

inline const QueryFieldSpec* find_field_spec(DocType doc_type, QueryKind kind, std::string_view field) {
  for (const auto& row : registry())
    if (row.doc_type == doc_type && row.kind == kind && row.field == field) return &row;
  return nullptr;
}

inline const QueryFieldSpec& registry_lookup(DocType doc_type, QueryKind kind, std::string_view field) {
  if (const auto* row = find_field_spec(doc_type, kind, field)) return *row;
  throw Error(ErrorCode::not_found, std::string(to_string(doc_type)) + "/" + std::string(to_string(kind)) + "/" +
                                        std::string(field));
}

inline bool kind_valid_for(DocType doc_type, QueryKind kind) {
  for (const auto& row : registry())
    if (row.doc_type == doc_type && row.kind == kind) return true;
  return false;
}

}  // namespace layoutret
