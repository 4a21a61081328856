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
#include <vector>

#include "layoutret/extract/common.hpp"
#include "layoutret/extract/theme.hpp"

namespace layoutret::extract {

namespace pptx_detail {

// Affine map from a shape tree's child coordinate space to slide EMUs.
struct Transform {
  double ox = 0, oy = 0, sx = 1, sy = 1;

  double x(double v) const { return ox + v * sx; }
  double y(double v) const { return oy + v * sy; }

  Transform compose(const xml::Node& xfrm) const {
    auto off = xfrm.child("off");
    auto ext = xfrm.child("ext");
    auto ch_off = xfrm.child("chOff");
    auto ch_ext = xfrm.child("chExt");
    if (!off || !ext || !ch_off || !ch_ext) return *this;
    const double ext_cx = ext.attr_double("cx").value_or(0), ext_cy = ext.attr_double("cy").value_or(0);
    const double ch_cx = ch_ext.attr_double("cx").value_or(0), ch_cy = ch_ext.attr_double("cy").value_or(0);
    const double rx = ch_cx > 0 ? ext_cx / ch_cx : 1.0;
    const double ry = ch_cy > 0 ? ext_cy / ch_cy : 1.0;
    Transform t;
    t.sx = sx * rx;
    t.sy = sy * ry;
    t.ox = x(off.attr_double("x").value_or(0) - ch_off.attr_double("x").value_or(0) * rx);
    t.oy = y(off.attr_double("y").value_or(0) - ch_off.attr_double("y").value_or(0) * ry);
    return t;
  }
};

struct Placeholder {
  std::string type;  // as written, "obj" when absent
  std::optional<std::string> idx;
};

inline std::optional<Placeholder> placeholder_of(const xml::Node& shape) {
  for (const char* nv : {"nvSpPr", "nvPicPr", "nvGraphicFramePr", "nvGrpSpPr", "nvCxnSpPr"}) {
    auto ph = shape.child(nv).path("nvPr/ph");
    if (ph) return Placeholder{ph.attr("type").value_or("obj"), ph.attr("idx")};
  }
  return std::nullopt;
}

// Placeholder families used when matching a slide placeholder to the master.
inline std::string master_family(std::string_view type) {
  if (type == "title" || type == "ctrTitle") return "title";
  if (type == "dt" || type == "ftr" || type == "sldNum" || type == "hdr") return std::string(type);
  return "body";
}

inline std::string_view text_style_for(std::string_view type) {
  auto family = master_family(type);
  if (family == "title") return "titleStyle";
  if (family == "body") return "bodyStyle";
  return "otherStyle";
}

inline xml::Node find_placeholder(const xml::Node& tree, const Placeholder& ph, bool by_family) {
  if (!tree) return {};
  auto shapes = tree.find_all("sp");
  for (const auto& pic : tree.find_all("pic")) shapes.push_back(pic);
  if (ph.idx && !by_family) {
    for (const auto& s : shapes)
      if (auto other = placeholder_of(s); other && other->idx == ph.idx) return s;
  }
  for (const auto& s : shapes) {
    auto other = placeholder_of(s);
    if (!other) continue;
    if (by_family ? master_family(other->type) == master_family(ph.type) : other->type == ph.type) return s;
  }
  return {};
}

inline xml::Node shape_xfrm(const xml::Node& shape) {
  if (shape.local() == "graphicFrame") return shape.child("xfrm");
  return shape.path("spPr/xfrm");
}

}  // namespace pptx_detail

class PresentationExtractor {
 public:
  PresentationExtractor(const OpcPackage& pkg, std::string doc_id) : cache_(pkg), doc_id_(std::move(doc_id)) {}

  ExtractResult run() {
    ExtractResult result;
    auto main = main_part_name(cache_.package());
    if (!main) throw Error(ErrorCode::unsupported_type, "no main document part");
    main_ = *main;
    auto pres = cache_.root(main_);

    PageGeometry geometry;
    if (auto sz = pres.child("sldSz")) {
      geometry.width = emu_cm(sz.attr_int("cx").value_or(0));
      geometry.height = emu_cm(sz.attr_int("cy").value_or(0));
    }
    if (!geometry.width || *geometry.width <= 0) {
      // 4:3 default when the size element is missing.
      geometry.width = emu_cm(9144000);
      geometry.height = emu_cm(6858000);
    }
    default_text_style_ = pres.child("defaultTextStyle");

    int index = 0;
    for (const auto& sld : pres.path("sldIdLst").children("sldId")) {
      ++index;
      auto rid = sld.attr_local("id", true);
      auto slide_part = rid ? cache_.target(main_, *rid) : std::nullopt;
      if (!slide_part) {
        result.warnings.push_back(doc_id_ + ": slide " + std::to_string(index) + ": unresolved relationship");
        continue;
      }
      try {
        PageFeature page{doc_id_, DocType::presentation, index, geometry, {}};
        extract_slide(*slide_part, page);
        result.pages.push_back(std::move(page));
      } catch (const std::exception& e) {
        result.warnings.push_back(doc_id_ + ": slide " + std::to_string(index) + ": " + e.what());
      }
    }
    return result;
  }

 private:
  struct SlideContext {
    xml::Node layout_tree;
    xml::Node master_tree;
    xml::Node master;
    const Theme* theme = nullptr;
    ColorMap colors;
  };

  const Theme* theme_for(const std::string& master_part) {
    auto it = themes_.find(master_part);
    if (it != themes_.end()) return it->second ? &*it->second : nullptr;
    std::optional<Theme> theme;
    if (auto t = cache_.first_target(master_part, rel_type::kTheme)) theme = parse_theme(cache_.root(*t));
    auto& slot = themes_[master_part];
    slot = std::move(theme);
    return slot ? &*slot : nullptr;
  }

  void extract_slide(const std::string& slide_part, PageFeature& page) {
    auto slide = cache_.root(slide_part);
    SlideContext ctx;
    if (auto layout = cache_.first_target(slide_part, rel_type::kSlideLayout)) {
      ctx.layout_tree = cache_.root(*layout).path("cSld/spTree");
      if (auto master = cache_.first_target(*layout, rel_type::kSlideMaster)) {
        ctx.master = cache_.root(*master);
        ctx.master_tree = ctx.master.path("cSld/spTree");
        ctx.theme = theme_for(*master);
        if (auto map = ctx.master.child("clrMap")) ctx.colors = ColorMap::from_node(map);
      }
    }
    if (auto ovr = slide.path("clrMapOvr/overrideClrMapping")) ctx.colors = ColorMap::from_node(ovr);

    walk(slide.path("cSld/spTree"), pptx_detail::Transform{}, ctx, page);
  }

  void walk(const xml::Node& tree, const pptx_detail::Transform& tf, const SlideContext& ctx, PageFeature& page) {
    for (const auto& node : tree.elements()) {
      const auto kind = node.local();
      if (kind == "sp" || kind == "cxnSp") {
        shape(node, tf, ctx, page);
      } else if (kind == "pic") {
        if (auto g = geometry_of(node, tf, ctx)) page.objects.push_back({ObjectKind::image, g});
      } else if (kind == "graphicFrame") {
        frame(node, tf, ctx, page);
      } else if (kind == "grpSp") {
        walk(node, tf.compose(node.path("grpSpPr/xfrm")), ctx, page);
      } else if (kind == "AlternateContent") {
        auto branch = node.child("Fallback");
        if (!branch) branch = node.child("Choice");
        walk(branch, tf, ctx, page);
      }
    }
  }

  std::optional<Geometry> geometry_of(const xml::Node& node, const pptx_detail::Transform& tf,
                                      const SlideContext& ctx) const {
    using namespace pptx_detail;
    auto xfrm = shape_xfrm(node);
    if (!xfrm || !xfrm.child("off")) {
      if (auto ph = placeholder_of(node)) {
        auto inherited = find_placeholder(ctx.layout_tree, *ph, false);
        xfrm = shape_xfrm(inherited);
        if (!xfrm || !xfrm.child("off")) xfrm = shape_xfrm(find_placeholder(ctx.master_tree, *ph, true));
      }
    }
    auto off = xfrm.child("off");
    auto ext = xfrm.child("ext");
    if (!off || !ext) return std::nullopt;
    const double x0 = tf.x(off.attr_double("x").value_or(0));
    const double y0 = tf.y(off.attr_double("y").value_or(0));
    const double w = ext.attr_double("cx").value_or(0) * tf.sx;
    const double h = ext.attr_double("cy").value_or(0) * tf.sy;
    if (!std::isfinite(x0) || !std::isfinite(y0) || !(w >= 0) || !(h >= 0))
      throw Error(ErrorCode::parse_failure, "invalid geometry");
    return Geometry{emu_cm(std::llround(x0)), emu_cm(std::llround(y0)), emu_cm(std::llround(w)),
                    emu_cm(std::llround(h))};
  }

  void shape(const xml::Node& node, const pptx_detail::Transform& tf, const SlideContext& ctx, PageFeature& page) {
    using namespace pptx_detail;
    auto ph = placeholder_of(node);
    auto geometry = geometry_of(node, tf, ctx);
    const bool text_box = node.path("nvSpPr/cNvSpPr").attr_bool("txBox");
    auto body = node.child("txBody");
    TextProps props = collect_text(node, body, ph, ctx);
    const bool has_runs = !body.find_all("r").empty() || !body.find_all("fld").empty();

    LayoutObject obj;
    obj.geometry = geometry;
    if (text_box || ph) {
      // Empty placeholders only show prompt text in the editor.
      if (ph && !has_runs) return;
      obj.kind = ObjectKind::textbox;
      obj.text_props = std::move(props);
    } else if (auto prst = node.path("spPr/prstGeom")) {
      obj.kind = ObjectKind::shape;
      obj.shape_type = text::to_lower(prst.attr("prst").value_or("rect"));
      if (has_runs) obj.text_props = std::move(props);
    } else if (node.path("spPr/custGeom")) {
      obj.kind = ObjectKind::shape;
      obj.shape_type = "custom";
      if (has_runs) obj.text_props = std::move(props);
    } else if (has_runs) {
      obj.kind = ObjectKind::textbox;
      obj.text_props = std::move(props);
    } else {
      return;
    }
    if (!obj.geometry) return;
    page.objects.push_back(std::move(obj));
  }

  void frame(const xml::Node& node, const pptx_detail::Transform& tf, const SlideContext& ctx, PageFeature& page) {
    auto tbl = node.path("graphic/graphicData/tbl");
    if (!tbl) return;  // charts, diagrams and OLE frames are not layout features here
    LayoutObject obj{ObjectKind::table, geometry_of(node, tf, ctx)};
    if (!obj.geometry) return;
    TableProps table;
    table.rows = static_cast<int>(tbl.children("tr").size());
    table.cols = static_cast<int>(tbl.path("tblGrid").children("gridCol").size());
    if (table.cols == 0)
      for (const auto& tr : tbl.children("tr"))
        table.cols = std::max(table.cols, static_cast<int>(tr.children("tc").size()));
    obj.table_props = table;

    TextProps props;
    for (const auto& tr : tbl.children("tr"))
      for (const auto& tc : tr.children("tc"))
        props.append(collect_text(xml::Node{}, tc.child("txBody"), std::nullopt, ctx));
    obj.text_props = std::move(props);
    page.objects.push_back(std::move(obj));
  }

  // Style sources, most specific first, each holding lvlNpPr/defRPr entries.
  std::vector<xml::Node> style_chain(const xml::Node& body,
                                     const std::optional<pptx_detail::Placeholder>& ph,
                                     const SlideContext& ctx) const {
    using namespace pptx_detail;
    std::vector<xml::Node> chain;
    chain.push_back(body.child("lstStyle"));
    if (ph) {
      chain.push_back(find_placeholder(ctx.layout_tree, *ph, false).path("txBody/lstStyle"));
      chain.push_back(find_placeholder(ctx.master_tree, *ph, true).path("txBody/lstStyle"));
      chain.push_back(ctx.master.path("txStyles").child(text_style_for(ph->type)));
    } else {
      chain.push_back(default_text_style_);
      chain.push_back(ctx.master.path("txStyles/otherStyle"));
    }
    return chain;
  }

  TextProps collect_text(const xml::Node& shape, const xml::Node& body,
                         const std::optional<pptx_detail::Placeholder>& ph, const SlideContext& ctx) const {
    TextProps props;
    if (!body) return props;
    const auto chain = style_chain(body, ph, ctx);
    // Shape-level font reference from the shape style sits below list styles.
    auto font_ref = shape ? shape.path("style/fontRef") : xml::Node{};

    for (const auto& para : body.children("p")) {
      const auto ppr = para.child("pPr");
      const auto level = "lvl" + std::to_string(ppr.attr_int("lvl").value_or(0) + 1) + "pPr";
      std::vector<xml::Node> sources;
      sources.push_back(ppr.child("defRPr"));
      for (const auto& style : chain) sources.push_back(style.child(level).child("defRPr"));

      for (const auto& run : para.elements()) {
        if (run.local() != "r" && run.local() != "fld") continue;
        std::vector<xml::Node> run_sources{run.child("rPr")};
        run_sources.insert(run_sources.end(), sources.begin(), sources.end());

        std::optional<double> size;
        std::optional<std::string> color;
        std::optional<std::string> face;
        for (const auto& src : run_sources) {
          if (!src) continue;
          if (!size)
            if (auto sz = src.attr_int("sz")) size = convert_length(*sz, RawUnit::hundredth_point).value;
          if (!color)
            if (auto fill = src.child("solidFill")) color = resolve_drawing_color(fill, ctx.theme, ctx.colors);
          if (!face)
            if (auto latin = src.child("latin")) face = resolve_typeface(latin.attr("typeface").value_or(""), ctx.theme);
        }
        if (!color && font_ref) color = resolve_drawing_color(font_ref, ctx.theme, ctx.colors);
        if (!face && font_ref)
          face = resolve_typeface(font_ref.attr("idx").value_or("minor") == "major" ? "+mj-lt" : "+mn-lt", ctx.theme);
        if (!color) {
          // Implicit text color is tx1.
          auto it = ctx.colors.mapping.find("tx1");
          if (ctx.theme && it != ctx.colors.mapping.end())
            if (auto c = ctx.theme->scheme_colors.find(it->second); c != ctx.theme->scheme_colors.end())
              color = c->second;
        }
        if (!face) face = resolve_typeface("+mn-lt", ctx.theme);

        props.font_sizes.push_back(size.value_or(18.0));
        if (color) props.font_colors.push_back(*color);
        if (face) props.font_names.push_back(*face);
      }
    }
    return props;
  }

  PartCache cache_;
  std::string doc_id_;
  std::string main_;
  xml::Node default_text_style_;
  std::map<std::string, std::optional<Theme>> themes_;
};

inline ExtractResult extract_presentation(const OpcPackage& pkg, const std::string& doc_id) {
  return PresentationExtractor(pkg, doc_id).run();
}

}  // namespace layoutret::extract
