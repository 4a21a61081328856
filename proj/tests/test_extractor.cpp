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

#include <cmath>
#include <random>

#include "layoutret/extractor.hpp"
#include "layoutret/units.hpp"
#include "support/fixtures.hpp"

namespace layoutret {
namespace {

namespace t = testing;

std::vector<PageFeature> extract_bytes(const std::vector<unsigned char>& bytes, std::vector<std::string>* warnings = nullptr) {
  auto result = extract_document(open_package_bytes(bytes, "mem"), "doc");
  if (warnings) *warnings = result.warnings;
  return result.pages;
}

const LayoutObject* first_of(const PageFeature& page, ObjectKind kind) {
  for (const auto& o : page.objects)
    if (o.kind == kind) return &o;
  return nullptr;
}

class FixtureFidelity : public ::testing::TestWithParam<std::string> {};

TEST_P(FixtureFidelity, MatchesAuthoredValues) {
  for (const auto& f : t::all_fixtures()) {
    if (f.name != GetParam()) continue;
    std::vector<std::string> warnings;
    auto pages = extract_bytes(f.bytes, &warnings);
    EXPECT_TRUE(warnings.empty());
    for (const auto& d : t::compare_pages(f.expected, pages, 0.005)) ADD_FAILURE() << d;
    for (const auto& p : pages) EXPECT_EQ(p.doc_id, "doc");
    return;
  }
  FAIL() << "no fixture " << GetParam();
}

INSTANTIATE_TEST_SUITE_P(AllFixtures, FixtureFidelity,
                         ::testing::Values("pptx_image_textbox", "pptx_table_shape", "pptx_cascade",
                                           "pptx_groups_two_slides", "docx_letter", "docx_footnote_image",
                                           "docx_tables_sections", "xlsx_cell_styles", "xlsx_image_chart",
                                           "xlsx_3d_multi"));

TEST(ExtractDocument, TwoSlidesTwoPages) {
  auto pages = extract_bytes(t::pptx_groups_two_slides().bytes);
  ASSERT_EQ(pages.size(), 2u);
  EXPECT_EQ(pages[0].page_index, 1);
  EXPECT_EQ(pages[1].page_index, 2);
}

TEST(ExtractDocument, DocxPageSize) {
  auto pages = extract_bytes(t::docx_letter().bytes);
  ASSERT_EQ(pages.size(), 1u);
  EXPECT_NEAR(*pages[0].page_geometry.width, 21.59, 1e-9);
  EXPECT_NEAR(*pages[0].page_geometry.height, 27.97, 1e-9);
}

TEST(ExtractDocument, XlsxZoom) {
  auto pages = extract_bytes(t::xlsx_cell_styles().bytes);
  ASSERT_EQ(pages.size(), 1u);
  EXPECT_EQ(pages[0].page_geometry.zoom_scale, 85);
  EXPECT_FALSE(pages[0].page_geometry.width);
}

TEST(ExtractDocument, UnknownTypeRejected) {
  t::PackageBuilder b;
  b.part("main.xml", "application/xml", "<d/>");
  b.rel("", "rId1", "officeDocument", "main.xml");
  try {
    extract_document(open_package_bytes(b.build(), "mem"), "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_type);
  }
}

TEST(ExtractDocument, BrokenSlideOmittedWithWarning) {
  t::pptx::Deck deck;
  deck.slides.push_back({"<p:sp><p:nvSpPr>", false});
  deck.slides.push_back({t::pptx::shape(2, "rect", {1, 1, 2, 2}), false});
  std::vector<std::string> warnings;
  auto pages = extract_bytes(t::pptx::build(deck), &warnings);
  ASSERT_EQ(pages.size(), 1u);
  EXPECT_EQ(pages[0].page_index, 2);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("slide 1"), std::string::npos);
}

TEST(ExtractPresentation, ImageGeometry) {
  auto pages = extract_bytes(t::pptx_image_textbox().bytes);
  const auto* img = first_of(pages.at(0), ObjectKind::image);
  ASSERT_NE(img, nullptr);
  EXPECT_NEAR(*img->geometry->x, 3.25, 1e-9);
  EXPECT_NEAR(*img->geometry->y, 4.55, 1e-9);
  EXPECT_NEAR(img->geometry->width, 7.22, 1e-9);
  EXPECT_NEAR(img->geometry->height, 2.66, 1e-9);
  EXPECT_FALSE(img->text_props);
}

TEST(ExtractPresentation, TableRowsCols) {
  auto pages = extract_bytes(t::pptx_table_shape().bytes);
  const auto* tbl = first_of(pages.at(0), ObjectKind::table);
  ASSERT_NE(tbl, nullptr);
  EXPECT_EQ(tbl->table_props, (TableProps{3, 2}));
}

TEST(ExtractPresentation, PresetShapeCaseFolded) {
  auto pages = extract_bytes(t::pptx_table_shape().bytes);
  const auto* sh = first_of(pages.at(0), ObjectKind::shape);
  ASSERT_NE(sh, nullptr);
  EXPECT_EQ(sh->shape_type, "leftrightarrow");
}

TEST(ExtractPresentation, GroupChildrenAbsolute) {
  auto pages = extract_bytes(t::pptx_groups_two_slides().bytes);
  const auto* img = first_of(pages.at(0), ObjectKind::image);
  ASSERT_NE(img, nullptr);
  // child (1,1) 2x1 inside a 2x scaled group at (2,2)
  EXPECT_NEAR(*img->geometry->x, 4.0, 1e-9);
  EXPECT_NEAR(*img->geometry->y, 4.0, 1e-9);
  EXPECT_NEAR(img->geometry->width, 4.0, 1e-9);
  EXPECT_NEAR(img->geometry->height, 2.0, 1e-9);
}

TEST(ExtractWordprocessing, FootnoteRun) {
  auto pages = extract_bytes(t::docx_footnote_image().bytes);
  const auto* fn = first_of(pages.at(0), ObjectKind::footnote);
  ASSERT_NE(fn, nullptr);
  EXPECT_EQ(*fn->text_props, t::text_props({20}, {"FF0000"}, {"candara"}));
}

TEST(ExtractWordprocessing, ImageSizeOnly) {
  auto pages = extract_bytes(t::docx_footnote_image().bytes);
  const auto* img = first_of(pages.at(0), ObjectKind::image);
  ASSERT_NE(img, nullptr);
  EXPECT_NEAR(img->geometry->width, 14.18, 1e-9);
  EXPECT_NEAR(img->geometry->height, 18.99, 1e-9);
  EXPECT_FALSE(img->geometry->x);
  EXPECT_FALSE(img->geometry->y);
}

TEST(ExtractWordprocessing, NoFootnotesNoFootnoteObjects) {
  for (const auto& p : extract_bytes(t::docx_letter().bytes))
    EXPECT_EQ(first_of(p, ObjectKind::footnote), nullptr);
}

TEST(ExtractWordprocessing, OnePagePerSection) {
  auto pages = extract_bytes(t::docx_tables_sections().bytes);
  ASSERT_EQ(pages.size(), 2u);
  EXPECT_NEAR(*pages[1].page_geometry.width, 29.7, 0.005);  // 16838 twip
}

TEST(ExtractSpreadsheet, ImageAnchor) {
  auto pages = extract_bytes(t::xlsx_image_chart().bytes);
  const auto* img = first_of(pages.at(0), ObjectKind::sheet_image);
  ASSERT_NE(img, nullptr);
  EXPECT_EQ(img->cell_anchor, (CellAnchor{{1, 5}, {5, 10}}));
}

TEST(ExtractSpreadsheet, BarChart) {
  auto pages = extract_bytes(t::xlsx_image_chart().bytes);
  const auto* chart = first_of(pages.at(0), ObjectKind::chart);
  ASSERT_NE(chart, nullptr);
  EXPECT_EQ(chart->chart_props, (ChartProps{"barchart", 2}));
  EXPECT_EQ(chart->cell_anchor, (CellAnchor{{8, 9}, {21, 15}}));
}

TEST(ExtractSpreadsheet, ThreeDimensionalChart) {
  auto pages = extract_bytes(t::xlsx_3d_multi().bytes);
  ASSERT_EQ(pages.size(), 2u);
  const auto* chart = first_of(pages[0], ObjectKind::chart);
  ASSERT_NE(chart, nullptr);
  EXPECT_EQ(chart->chart_props, (ChartProps{"barchart", 3}));
}

TEST(ExtractSpreadsheet, EmptyWorksheet) {
  t::xlsx::Workbook wb;
  t::xlsx::Sheet sheet;
  sheet.zoom.reset();
  wb.sheets.push_back(sheet);
  auto pages = extract_bytes(t::xlsx::build(wb));
  ASSERT_EQ(pages.size(), 1u);
  EXPECT_EQ(pages[0].page_geometry.zoom_scale, 100);
  EXPECT_TRUE(pages[0].objects.empty());
}

TEST(ConvertLength, Emu) {
  auto l = convert_length(360000, RawUnit::emu);
  EXPECT_EQ(l.value, 1.0);
  EXPECT_EQ(l.unit, OutUnit::cm);
}

TEST(ConvertLength, TwipA4Width) {
  const double oracle = 11906.0 * 2.54 / 1440.0;
  auto l = convert_length(11906, RawUnit::twip);
  EXPECT_DOUBLE_EQ(l.value, oracle);
  EXPECT_NEAR(l.value, 21.000861, 1e-6);
}

TEST(ConvertLength, HalfPoint) {
  auto l = convert_length(24, RawUnit::half_point);
  EXPECT_EQ(l.value, 12.0);
  EXPECT_EQ(l.unit, OutUnit::pt);
}

TEST(ConvertLength, HundredthPointAndPoint) {
  EXPECT_EQ(convert_length(1800, RawUnit::hundredth_point).value, 18.0);
  EXPECT_DOUBLE_EQ(convert_length(72, RawUnit::point).value, 2.54);
}

TEST(ExtractProperties, Deterministic) {
  for (const auto& f : t::all_fixtures()) {
    auto a = extract_bytes(f.bytes);
    auto b = extract_bytes(f.bytes);
    EXPECT_EQ(a, b) << f.name;
  }
}

TEST(ExtractProperties, GeometryFiniteAndNonNegative) {
  for (const auto& f : t::all_fixtures())
    for (const auto& p : extract_bytes(f.bytes))
      for (const auto& o : p.objects) {
        if (!o.geometry) continue;
        EXPECT_TRUE(std::isfinite(o.geometry->width) && o.geometry->width >= 0) << f.name;
        EXPECT_TRUE(std::isfinite(o.geometry->height) && o.geometry->height >= 0) << f.name;
        if (o.geometry->x) {
          EXPECT_TRUE(std::isfinite(*o.geometry->x) && *o.geometry->x >= 0) << f.name;
        }
        if (o.geometry->y) {
          EXPECT_TRUE(std::isfinite(*o.geometry->y) && *o.geometry->y >= 0) << f.name;
        }
      }
}

// Explicit slide run properties beat whatever the master and theme say.
TEST(ExtractProperties, SlideValuesWinOverCascade) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> fonts = {"Arial", "Georgia", "Verdana", "Consolas", "Garamond"};
  const std::vector<std::string> colors = {"112233", "ABCDEF", "FF0000", "00FF00", "123456"};
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  for (int round = 0; round < 40; ++round) {
    t::pptx::Deck deck;
    deck.master_body = {double(10 + rng() % 30), pick(colors), pick(fonts)};
    deck.master_other = {double(10 + rng() % 30), pick(colors), pick(fonts)};
    deck.theme_colors["accent2"] = pick(colors);
    deck.master_shapes = t::pptx::placeholder(3, "body", "1", {}, t::Rect{1, 4, 20, 12});
    t::Run explicit_run{double(8 + rng() % 60), pick(colors), pick(fonts)};
    t::Run inherit_run{};
    if (rng() % 2) inherit_run.size_pt = explicit_run.size_pt;
    deck.slides.push_back({t::pptx::placeholder(3, "body", "1", {explicit_run, inherit_run}) +
                               t::pptx::textbox(4, {1, 1, 5, 1}, {explicit_run}),
                           false});
    auto pages = extract_bytes(t::pptx::build(deck));
    ASSERT_EQ(pages.size(), 1u);
    ASSERT_EQ(pages[0].objects.size(), 2u);
    const auto& body = *pages[0].objects[0].text_props;
    const auto font = text::to_lower(*explicit_run.font);
    ASSERT_EQ(body.font_sizes.size(), 2u);
    EXPECT_EQ(body.font_sizes[0], *explicit_run.size_pt);
    EXPECT_EQ(body.font_colors[0], *explicit_run.color);
    EXPECT_EQ(body.font_names[0], font);
    EXPECT_EQ(body.font_sizes[1], inherit_run.size_pt.value_or(*deck.master_body.size_pt));
    EXPECT_EQ(body.font_colors[1], *deck.master_body.color);
    EXPECT_EQ(body.font_names[1], text::to_lower(*deck.master_body.font));
    const auto& box = *pages[0].objects[1].text_props;
    EXPECT_EQ(box.font_sizes, std::vector<double>{*explicit_run.size_pt});
    EXPECT_EQ(box.font_colors, std::vector<std::string>{*explicit_run.color});
    EXPECT_EQ(box.font_names, std::vector<std::string>{font});
  }
}

}  // namespace
}  // namespace layoutret
