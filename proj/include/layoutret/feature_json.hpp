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

#include <string>

#include <nlohmann/json.hpp>

#include "layoutret/error.hpp"
#include "layoutret/feature.hpp"
#include "layoutret/util/text.hpp"

// JSON form of page features, shared by the feature database and result
// records. Lengths are written on the canonical 1e-4 grid; absent optional
// groups are omitted.
namespace layoutret {

using json = nlohmann::json;

namespace json_detail {

inline json number(double v) { return text::canonical(v); }

template <class T>
json list(const std::vector<T>& values) {
  json out = json::array();
  for (const auto& v : values) {
    if constexpr (std::is_same_v<T, double>)
      out.push_back(number(v));
    else
      out.push_back(v);
  }
  return out;
}

inline const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::malformed_record, std::string("missing key '") + key + "'");
  return *it;
}

template <class T>
std::vector<T> read_list(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  return it->get<std::vector<T>>();
}

inline CellRef read_cell(const json& j) {
  auto ref = parse_cell_ref(j.get<std::string>());
  if (!ref) throw Error(ErrorCode::malformed_record, "bad cell reference " + j.dump());
  return *ref;
}

}  // namespace json_detail

inline json to_json(const LayoutObject& obj) {
  using namespace json_detail;
  json j{{"kind", to_string(obj.kind)}};
  if (obj.geometry) {
    json g{{"width", number(obj.geometry->width)}, {"height", number(obj.geometry->height)}};
    if (obj.geometry->x) g["x"] = number(*obj.geometry->x);
    if (obj.geometry->y) g["y"] = number(*obj.geometry->y);
    j["geometry"] = std::move(g);
  }
  if (obj.text_props)
    j["text_props"] = {{"font_sizes", list(obj.text_props->font_sizes)},
                       {"font_colors", list(obj.text_props->font_colors)},
                       {"font_names", list(obj.text_props->font_names)}};
  if (obj.table_props) j["table_props"] = {{"rows", obj.table_props->rows}, {"cols", obj.table_props->cols}};
  if (obj.shape_type) j["shape_type"] = *obj.shape_type;
  if (obj.chart_props)
    j["chart_props"] = {{"chart_type", obj.chart_props->chart_type},
                        {"dimensionality", obj.chart_props->dimensionality}};
  if (obj.cell_anchor)
    j["cell_anchor"] = {{"from", to_string(obj.cell_anchor->from)}, {"to", to_string(obj.cell_anchor->to)}};
  if (obj.cell_style_props)
    j["cell_style_props"] = {{"fill_patterns", list(obj.cell_style_props->fill_patterns)},
                             {"fill_colors", list(obj.cell_style_props->fill_colors)},
                             {"borders", list(obj.cell_style_props->borders)}};
  return j;
}

inline LayoutObject layout_object_from_json(const json& j) {
  using namespace json_detail;
  LayoutObject obj;
  auto kind = parse_object_kind(field(j, "kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::malformed_record, "unknown object kind " + j["kind"].dump());
  obj.kind = *kind;
  if (auto it = j.find("geometry"); it != j.end()) {
    Geometry g;
    g.width = field(*it, "width").get<double>();
    g.height = field(*it, "height").get<double>();
    if (it->contains("x")) g.x = (*it)["x"].get<double>();
    if (it->contains("y")) g.y = (*it)["y"].get<double>();
    obj.geometry = g;
  }
  if (auto it = j.find("text_props"); it != j.end())
    obj.text_props = TextProps{read_list<double>(*it, "font_sizes"), read_list<std::string>(*it, "font_colors"),
                               read_list<std::string>(*it, "font_names")};
  if (auto it = j.find("table_props"); it != j.end())
    obj.table_props = TableProps{field(*it, "rows").get<int>(), field(*it, "cols").get<int>()};
  if (auto it = j.find("shape_type"); it != j.end()) obj.shape_type = it->get<std::string>();
  if (auto it = j.find("chart_props"); it != j.end())
    obj.chart_props = ChartProps{field(*it, "chart_type").get<std::string>(), field(*it, "dimensionality").get<int>()};
  if (auto it = j.find("cell_anchor"); it != j.end())
    obj.cell_anchor = CellAnchor{read_cell(field(*it, "from")), read_cell(field(*it, "to"))};
  if (auto it = j.find("cell_style_props"); it != j.end())
    obj.cell_style_props =
        CellStyleProps{read_list<std::string>(*it, "fill_patterns"), read_list<std::string>(*it, "fill_colors"),
                       read_list<std::string>(*it, "borders")};
  return obj;
}

inline json to_json(const PageGeometry& g) {
  using namespace json_detail;
  json j = json::object();
  if (g.width) j["width"] = number(*g.width);
  if (g.height) j["height"] = number(*g.height);
  if (g.columns) j["columns"] = *g.columns;
  if (g.margins) {
    const auto& m = *g.margins;
    j["margins"] = {{"upper", number(m.upper)},   {"right", number(m.right)},   {"lower", number(m.lower)},
                    {"left", number(m.left)},     {"header", number(m.header)}, {"footer", number(m.footer)},
                    {"gutter", number(m.gutter)}, {"column", number(m.column)}};
  }
  if (g.zoom_scale) j["zoom_scale"] = *g.zoom_scale;
  if (g.used_rows) j["used_rows"] = *g.used_rows;
  if (g.used_cols) j["used_cols"] = *g.used_cols;
  return j;
}

inline PageGeometry page_geometry_from_json(const json& j) {
  using namespace json_detail;
  PageGeometry g;
  if (j.contains("width")) g.width = j["width"].get<double>();
  if (j.contains("height")) g.height = j["height"].get<double>();
  if (j.contains("columns")) g.columns = j["columns"].get<int>();
  if (auto it = j.find("margins"); it != j.end()) {
    Margins m;
    m.upper = field(*it, "upper").get<double>();
    m.right = field(*it, "right").get<double>();
    m.lower = field(*it, "lower").get<double>();
    m.left = field(*it, "left").get<double>();
    m.header = field(*it, "header").get<double>();
    m.footer = field(*it, "footer").get<double>();
    m.gutter = field(*it, "gutter").get<double>();
    m.column = field(*it, "column").get<double>();
    g.margins = m;
  }
  if (j.contains("zoom_scale")) g.zoom_scale = j["zoom_scale"].get<int>();
  if (j.contains("used_rows")) g.used_rows = j["used_rows"].get<int>();
  if (j.contains("used_cols")) g.used_cols = j["used_cols"].get<int>();
  return g;
}

inline json to_json(const PageFeature& page) {
  json objects = json::array();
  for (const auto& obj : page.objects) objects.push_back(to_json(obj));
  return {{"doc_id", page.doc_id},
          {"doc_type", to_string(page.doc_type)},
          {"page_index", page.page_index},
          {"page_geometry", to_json(page.page_geometry)},
          {"objects", std::move(objects)}};
}

inline PageFeature page_feature_from_json(const json& j) {
  using namespace json_detail;
  PageFeature page;
  page.doc_id = field(j, "doc_id").get<std::string>();
  auto type = parse_doc_type(field(j, "doc_type").get<std::string>());
  if (!type) throw Error(ErrorCode::malformed_record, "unknown doc_type " + j["doc_type"].dump());
  page.doc_type = *type;
  page.page_index = field(j, "page_index").get<int>();
  page.page_geometry = page_geometry_from_json(field(j, "page_geometry"));
  for (const auto& o : field(j, "objects")) page.objects.push_back(layout_object_from_json(o));
  return page;
}

}  // namespace layoutret
