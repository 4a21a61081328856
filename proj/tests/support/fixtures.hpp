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

// Hand-authored fixture packages paired with the features they were
// authored to contain.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "layoutret/feature.hpp"
#include "ooxml_builder.hpp"

namespace layoutret::testing {

struct Fixture {
  std::string name;
  DocType type = DocType::unknown;
  std::vector<unsigned char> bytes;
  std::vector<PageFeature> expected;  // doc_id left empty
};

inline TextProps text_props(std::vector<double> sizes, std::vector<std::string> colors, std::vector<std::string> names) {
  return TextProps{std::move(sizes), std::move(colors), std::move(names)};
}

inline LayoutObject object(ObjectKind kind, std::optional<Geometry> g = std::nullopt,
                           std::optional<TextProps> t = std::nullopt) {
  LayoutObject o;
  o.kind = kind;
  o.geometry = g;
  o.text_props = std::move(t);
  return o;
}

inline Geometry rect_geometry(const Rect& r) { return Geometry{r.x, r.y, r.w, r.h}; }
inline Geometry size_geometry(double w, double h) { return Geometry{std::nullopt, std::nullopt, w, h}; }

inline PageFeature page(DocType type, int index, PageGeometry g, std::vector<LayoutObject> objects) {
  return PageFeature{"", type, index, std::move(g), std::move(objects)};
}

inline PageGeometry slide_geometry(double w, double h) {
  PageGeometry g;
  g.width = w;
  g.height = h;
  return g;
}

inline PageGeometry docx_geometry(const docx::PageSetup& p) {
  PageGeometry g;
  g.width = p.width;
  g.height = p.height;
  g.columns = p.columns;
  g.margins = Margins{p.top, p.right, p.bottom, p.left, p.header, p.footer, p.gutter, p.column_space};
  return g;
}

inline PageGeometry sheet_geometry(int zoom, int rows, int cols) {
  PageGeometry g;
  g.zoom_scale = zoom;
  g.used_rows = rows;
  g.used_cols = cols;
  return g;
}

template <class T>
std::vector<T> repeat(std::size_t n, const T& v) {
  return std::vector<T>(n, v);
}

// Slide with a text box and an image at the documented sample positions.
inline Fixture pptx_image_textbox() {
  const Rect tb{1.06, 4.02, 23.28, 12.90};
  const Rect img{3.25, 4.55, 7.22, 2.66};
  pptx::Deck deck;
  deck.slides.push_back({pptx::textbox(2, tb, {{12.0, "000000", "Times New Roman"}, {24.0, "FFFFFF", "Arial"}}) +
                             pptx::picture(3, img),
                         true});
  Fixture f{"pptx_image_textbox", DocType::presentation, pptx::build(deck), {}};
  f.expected.push_back(page(DocType::presentation, 1, slide_geometry(25.4, 19.05),
                            {object(ObjectKind::textbox, rect_geometry(tb),
                                    text_props({12, 24}, {"000000", "FFFFFF"}, {"times new roman", "arial"})),
                             object(ObjectKind::image, rect_geometry(img))}));
  return f;
}

inline Fixture pptx_table_shape() {
  const Rect tbl{5.26, 1.26, 9.15, 2.49};
  const Rect sh{10.10, 15.32, 6.0, 5.12};
  pptx::Deck deck;
  deck.slides.push_back({pptx::table(2, tbl, 3, 2, {14.0, "1F3864", "Times New Roman"}) +
                             pptx::shape(3, "leftRightArrow", sh, {{18.0, "FF0000", "Arial"}}),
                         false});
  Fixture f{"pptx_table_shape", DocType::presentation, pptx::build(deck), {}};
  auto table = object(ObjectKind::table, rect_geometry(tbl),
                      text_props(repeat<double>(6, 14), repeat<std::string>(6, "1F3864"),
                                 repeat<std::string>(6, "times new roman")));
  table.table_props = TableProps{3, 2};
  auto shape = object(ObjectKind::shape, rect_geometry(sh), text_props({18}, {"FF0000"}, {"arial"}));
  shape.shape_type = "leftrightarrow";
  f.expected.push_back(page(DocType::presentation, 1, slide_geometry(25.4, 19.05), {table, shape}));
  return f;
}

// Placeholders take geometry from the layout and run properties from the
// master text styles and theme; explicit slide values win.
inline Fixture pptx_cascade() {
  const Rect layout_title{1.27, 0.76, 22.86, 3.18};
  const Rect master_title{2.0, 1.0, 20.0, 3.0};
  const Rect master_body{1.27, 4.45, 22.86, 12.57};
  const Rect body{2.5, 5.0, 20.0, 10.0};
  const Rect note{1.0, 17.0, 8.0, 1.2};
  pptx::Deck deck;
  deck.layout_shapes = pptx::placeholder(2, "title", std::nullopt, {}, layout_title);
  deck.master_shapes = pptx::placeholder(2, "title", std::nullopt, {}, master_title) +
                       pptx::placeholder(3, "body", "1", {}, master_body);
  deck.slides.push_back({pptx::placeholder(2, "title", std::nullopt, {Run{}}) +
                             pptx::placeholder(3, "body", "1", {Run{32.0, "scheme:accent1", std::nullopt}}, body) +
                             pptx::placeholder(4, "body", "2", {}) + pptx::textbox(5, note, {Run{}}),
                         false});
  Fixture f{"pptx_cascade", DocType::presentation, pptx::build(deck), {}};
  f.expected.push_back(
      page(DocType::presentation, 1, slide_geometry(25.4, 19.05),
           {object(ObjectKind::textbox, rect_geometry(layout_title), text_props({28}, {"000000"}, {"calibri light"})),
            object(ObjectKind::textbox, rect_geometry(body), text_props({32}, {"4472C4"}, {"calibri"})),
            object(ObjectKind::textbox, rect_geometry(note), text_props({18}, {"000000"}, {"calibri"}))}));
  return f;
}

// Widescreen deck; the first slide holds a scaled group, the second a plain
// shape without text.
inline Fixture pptx_groups_two_slides() {
  pptx::Deck deck;
  deck.width_cm = 33.8667;
  deck.height_cm = 19.05;
  deck.slides.push_back({pptx::group(2, {2, 2, 10, 6}, 2.0, pptx::picture(3, {1, 1, 2, 1})), true});
  deck.slides.push_back({pptx::shape(2, "ellipse", {2, 3, 4, 5}), false});
  Fixture f{"pptx_groups_two_slides", DocType::presentation, pptx::build(deck), {}};
  const auto geom = slide_geometry(33.8667, 19.05);
  f.expected.push_back(page(DocType::presentation, 1, geom, {object(ObjectKind::image, Geometry{4, 4, 4, 2})}));
  auto ellipse = object(ObjectKind::shape, Geometry{2, 3, 4, 5});
  ellipse.shape_type = "ellipse";
  f.expected.push_back(page(DocType::presentation, 2, geom, {ellipse}));
  return f;
}

inline Fixture docx_letter() {
  docx::PageSetup setup;
  setup.width = 21.59;
  setup.height = 27.97;
  setup.gutter = 2.51;
  setup.columns = 2;
  setup.column_space = 0.5;
  setup.header_rids = {"rIdH1"};
  setup.footer_rids = {"rIdF1"};
  docx::Document doc;
  doc.body = docx::paragraph({{12.0, "000000", "Times New Roman"}, {11.0, "0070C0", "Arial"}}) +
             docx::paragraph({{12.0, "000000", "Calibri"}}) + docx::sect_pr(setup);
  doc.headers["rIdH1"] = docx::paragraph({{10.0, "000000", "Verdana"}});
  doc.footers["rIdF1"] = docx::paragraph({{10.0, "165189", "Verdana"}});
  Fixture f{"docx_letter", DocType::wordprocessing, docx::build(doc), {}};
  f.expected.push_back(page(
      DocType::wordprocessing, 1, docx_geometry(setup),
      {object(ObjectKind::body_text, std::nullopt,
              text_props({12, 11, 12}, {"000000", "0070C0", "000000"}, {"times new roman", "arial", "calibri"})),
       object(ObjectKind::header, std::nullopt, text_props({10}, {"000000"}, {"verdana"})),
       object(ObjectKind::footer, std::nullopt, text_props({10}, {"165189"}, {"verdana"}))}));
  return f;
}

inline Fixture docx_footnote_image() {
  docx::PageSetup setup;
  docx::Document doc;
  doc.with_image = true;
  doc.body = docx::paragraph({{12.0, "000000", "Cambria"}}, docx::footnote_ref("1") + docx::image(14.18, 18.99)) +
             docx::paragraph({{12.0, "000000", "Cambria"}}, docx::endnote_ref("1")) + docx::sect_pr(setup);
  doc.footnotes["1"] = docx::paragraph({{20.0, "FF0000", "Candara"}});
  doc.endnotes["1"] = docx::paragraph({{9.0, "7F7F7F", "Georgia"}});
  Fixture f{"docx_footnote_image", DocType::wordprocessing, docx::build(doc), {}};
  f.expected.push_back(page(DocType::wordprocessing, 1, docx_geometry(setup),
                            {object(ObjectKind::body_text, std::nullopt,
                                    text_props({12, 12}, {"000000", "000000"}, {"cambria", "cambria"})),
                             object(ObjectKind::image, size_geometry(14.18, 18.99)),
                             object(ObjectKind::footnote, std::nullopt, text_props({20}, {"FF0000"}, {"candara"})),
                             object(ObjectKind::body_text, std::nullopt, text_props({9}, {"7F7F7F"}, {"georgia"}))}));
  return f;
}

// Two sections; the second inherits the first one's header and its table
// text falls back to theme colors and document defaults.
inline Fixture docx_tables_sections() {
  docx::PageSetup a4;
  a4.width = 21.0;
  a4.height = 29.7;
  a4.header_rids = {"rIdH1"};
  docx::PageSetup landscape = a4;
  landscape.width = 29.7;
  landscape.height = 21.0;
  landscape.header_rids.clear();
  docx::Document doc;
  doc.body = docx::paragraph({{14.0, "000000", "Arial"}}) + docx::table(3, 4, {12.0, "000000", "Arial"}) +
             docx::section_break(a4) + docx::table(2, 2, {std::nullopt, "theme:accent1", std::nullopt}) +
             docx::sect_pr(landscape);
  doc.headers["rIdH1"] = docx::paragraph({{9.0, "404040", "Consolas"}});
  Fixture f{"docx_tables_sections", DocType::wordprocessing, docx::build(doc), {}};
  auto t1 = object(ObjectKind::table, std::nullopt,
                   text_props(repeat<double>(12, 12), repeat<std::string>(12, "000000"), repeat<std::string>(12, "arial")));
  t1.table_props = TableProps{3, 4};
  auto t2 = object(ObjectKind::table, std::nullopt,
                   text_props(repeat<double>(4, 11), repeat<std::string>(4, "4472C4"), repeat<std::string>(4, "calibri")));
  t2.table_props = TableProps{2, 2};
  const auto header = object(ObjectKind::header, std::nullopt, text_props({9}, {"404040"}, {"consolas"}));
  f.expected.push_back(page(DocType::wordprocessing, 1, docx_geometry(a4),
                            {object(ObjectKind::body_text, std::nullopt, text_props({14}, {"000000"}, {"arial"})), t1,
                             header}));
  f.expected.push_back(page(DocType::wordprocessing, 2, docx_geometry(landscape), {t2, header}));
  return f;
}

inline Fixture xlsx_cell_styles() {
  xlsx::Workbook wb;
  wb.styles.fonts = {{11, "Calibri"}, {12, "CG Times (WN)"}};
  wb.styles.fills = {{"none"}, {"gray125"}, {"solid", "FFFF00"}};
  wb.styles.borders = {{}, {{{"left", "double"}}}, {{{"top", "dotted"}}}, {{{"bottom", "thin"}}}};
  wb.styles.formats = {{0, 0, 0}, {1, 2, 1}, {0, 2, 2}, {0, 0, 3}};
  xlsx::Sheet sheet;
  sheet.zoom = 85;
  sheet.dimension = "A1:B2";
  sheet.cells = {{"A1", 1}, {"B1", 2}, {"A2", 3}, {"B2", 0}};
  wb.sheets.push_back(sheet);
  Fixture f{"xlsx_cell_styles", DocType::spreadsheet, xlsx::build(wb), {}};
  auto cells = object(ObjectKind::cell_styles, std::nullopt,
                      text_props({12, 11, 11, 11}, {}, {"cg times (wn)", "calibri", "calibri", "calibri"}));
  cells.cell_style_props = CellStyleProps{{"solid", "solid", "none", "none"}, {"FFFF00", "FFFF00"},
                                          {"double", "dotted", "thin", "none"}};
  f.expected.push_back(page(DocType::spreadsheet, 1, sheet_geometry(85, 2, 2), {cells}));
  return f;
}

inline Fixture xlsx_image_chart() {
  xlsx::Workbook wb;
  xlsx::Sheet sheet;
  sheet.images.push_back({1, 5, 5, 10});
  sheet.charts.push_back({{8, 9, 21, 15}, "barChart"});
  wb.sheets.push_back(sheet);
  Fixture f{"xlsx_image_chart", DocType::spreadsheet, xlsx::build(wb), {}};
  LayoutObject img{ObjectKind::sheet_image};
  img.cell_anchor = CellAnchor{{1, 5}, {5, 10}};
  LayoutObject chart{ObjectKind::chart};
  chart.chart_props = ChartProps{"barchart", 2};
  chart.cell_anchor = CellAnchor{{8, 9}, {21, 15}};
  f.expected.push_back(page(DocType::spreadsheet, 1, sheet_geometry(100, 21, 15), {img, chart}));
  return f;
}

// Two worksheets plus a chartsheet, which is not a page.
inline Fixture xlsx_3d_multi() {
  xlsx::Workbook wb;
  wb.with_chartsheet = true;
  xlsx::Sheet s1;
  s1.name = "Summary";
  s1.zoom = 120;
  s1.charts.push_back({{2, 2, 2, 2, true}, "bar3DChart"});
  xlsx::Sheet s2;
  s2.name = "Data";
  s2.zoom = 10;
  s2.charts.push_back({{3, 1, 10, 6}, "pieChart"});
  s2.images.push_back({4, 4, 4, 4, true});
  wb.sheets = {s1, s2};
  Fixture f{"xlsx_3d_multi", DocType::spreadsheet, xlsx::build(wb), {}};
  LayoutObject bar3d{ObjectKind::chart};
  bar3d.chart_props = ChartProps{"barchart", 3};
  bar3d.cell_anchor = CellAnchor{{2, 2}, {2, 2}};
  LayoutObject pie{ObjectKind::chart};
  pie.chart_props = ChartProps{"piechart", 2};
  pie.cell_anchor = CellAnchor{{3, 1}, {10, 6}};
  LayoutObject img{ObjectKind::sheet_image};
  img.cell_anchor = CellAnchor{{4, 4}, {4, 4}};
  f.expected.push_back(page(DocType::spreadsheet, 1, sheet_geometry(120, 2, 2), {bar3d}));
  // Images are listed before charts within one drawing.
  f.expected.push_back(page(DocType::spreadsheet, 2, sheet_geometry(10, 10, 6), {img, pie}));
  return f;
}

inline std::vector<Fixture> all_fixtures() {
  return {pptx_image_textbox(), pptx_table_shape(),     pptx_cascade(),     pptx_groups_two_slides(),
          docx_letter(),        docx_footnote_image(),  docx_tables_sections(), xlsx_cell_styles(),
          xlsx_image_chart(),   xlsx_3d_multi()};
}

// Differences between authored and extracted pages; empty when they agree.
// Lengths compare within `tol` cm, everything else exactly.
inline std::vector<std::string> compare_pages(const std::vector<PageFeature>& expected,
                                              const std::vector<PageFeature>& actual, double tol) {
  std::vector<std::string> diffs;
  auto near = [&](const std::string& what, std::optional<double> e, std::optional<double> a) {
    if (e.has_value() != a.has_value())
      diffs.push_back(what + ": presence differs");
    else if (e && !(std::abs(*e - *a) <= tol))
      diffs.push_back(what + ": expected " + std::to_string(*e) + ", got " + std::to_string(*a));
  };
  auto same = [&](const std::string& what, const auto& e, const auto& a) {
    if (!(e == a)) diffs.push_back(what + ": mismatch");
  };
  if (expected.size() != actual.size()) {
    diffs.push_back("page count " + std::to_string(expected.size()) + " vs " + std::to_string(actual.size()));
    return diffs;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& e = expected[i];
    const auto& a = actual[i];
    const auto p = "page " + std::to_string(i + 1);
    same(p + " index", e.page_index, a.page_index);
    same(p + " type", e.doc_type, a.doc_type);
    const auto& eg = e.page_geometry;
    const auto& ag = a.page_geometry;
    near(p + " width", eg.width, ag.width);
    near(p + " height", eg.height, ag.height);
    same(p + " columns", eg.columns, ag.columns);
    same(p + " zoom", eg.zoom_scale, ag.zoom_scale);
    same(p + " used rows", eg.used_rows, ag.used_rows);
    same(p + " used cols", eg.used_cols, ag.used_cols);
    if (eg.margins.has_value() != ag.margins.has_value()) {
      diffs.push_back(p + " margins presence");
    } else if (eg.margins) {
      const auto& em = *eg.margins;
      const auto& am = *ag.margins;
      near(p + " upper", em.upper, am.upper);
      near(p + " right", em.right, am.right);
      near(p + " lower", em.lower, am.lower);
      near(p + " left", em.left, am.left);
      near(p + " header", em.header, am.header);
      near(p + " footer", em.footer, am.footer);
      near(p + " gutter", em.gutter, am.gutter);
      near(p + " column", em.column, am.column);
    }
    if (e.objects.size() != a.objects.size()) {
      diffs.push_back(p + " object count " + std::to_string(e.objects.size()) + " vs " +
                      std::to_string(a.objects.size()));
      continue;
    }
    for (std::size_t k = 0; k < e.objects.size(); ++k) {
      const auto& eo = e.objects[k];
      const auto& ao = a.objects[k];
      const auto o = p + " object " + std::to_string(k) + " (" + std::string(to_string(eo.kind)) + ")";
      same(o + " kind", eo.kind, ao.kind);
      if (eo.geometry.has_value() != ao.geometry.has_value()) {
        diffs.push_back(o + " geometry presence");
      } else if (eo.geometry) {
        near(o + " x", eo.geometry->x, ao.geometry->x);
        near(o + " y", eo.geometry->y, ao.geometry->y);
        near(o + " width", eo.geometry->width, ao.geometry->width);
        near(o + " height", eo.geometry->height, ao.geometry->height);
      }
      same(o + " text", eo.text_props, ao.text_props);
      same(o + " table", eo.table_props, ao.table_props);
      same(o + " shape", eo.shape_type, ao.shape_type);
      same(o + " chart", eo.chart_props, ao.chart_props);
      same(o + " anchor", eo.cell_anchor, ao.cell_anchor);
      same(o + " cell styles", eo.cell_style_props, ao.cell_style_props);
    }
  }
  return diffs;
}

}  // namespace layoutret::testing
