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

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "layoutret/extract/common.hpp"
#include "layoutret/extract/theme.hpp"

namespace layoutret::extract {

namespace docx_detail {

struct Style {
  std::string type;
  std::string based_on;
  xml::Node rpr;
};

struct StyleSheet {
  xml::Node default_rpr;
  std::map<std::string, Style> styles;
  std::string default_paragraph;

  static StyleSheet parse(const xml::Node& root) {
    StyleSheet sheet;
    sheet.default_rpr = root.path("docDefaults/rPrDefault/rPr");
    for (const auto& s : root.children("style")) {
      auto id = s.attr("w:styleId");
      if (!id) continue;
      Style style{s.attr("w:type").value_or(""), s.child("basedOn").attr("w:val").value_or(""), s.child("rPr")};
      if (style.type == "paragraph" && s.attr_bool("w:default")) sheet.default_paragraph = *id;
      sheet.styles.emplace(*id, std::move(style));
    }
    return sheet;
  }

  // rPr nodes of a style and its basedOn ancestors, most specific first.
  void chain(const std::string& id, std::vector<xml::Node>& out) const {
    std::set<std::string> seen;
    std::string cur = id;
    while (!cur.empty() && seen.insert(cur).second) {
      auto it = styles.find(cur);
      if (it == styles.end()) break;
      out.push_back(it->second.rpr);
      cur = it->second.based_on;
    }
  }
};

inline std::optional<std::string> theme_slot(std::string_view theme_color) {
  static const std::map<std::string, std::string, std::less<>> kSlots{
      {"text1", "dk1"},   {"dark1", "dk1"},   {"background1", "lt1"}, {"light1", "lt1"},
      {"text2", "dk2"},   {"dark2", "dk2"},   {"background2", "lt2"}, {"light2", "lt2"},
      {"accent1", "accent1"}, {"accent2", "accent2"}, {"accent3", "accent3"},
      {"accent4", "accent4"}, {"accent5", "accent5"}, {"accent6", "accent6"},
      {"hyperlink", "hlink"}, {"followedHyperlink", "folHlink"},
  };
  auto it = kSlots.find(theme_color);
  if (it == kSlots.end()) return std::nullopt;
  return it->second;
}

// Text is everything a run shows: w:t plus tabs and breaks are ignored.
inline bool has_text(const xml::Node& run) {
  for (const auto& t : run.children("t"))
    if (!t.text().empty()) return true;
  return false;
}

}  // namespace docx_detail

class WordprocessingExtractor {
 public:
  WordprocessingExtractor(const OpcPackage& pkg, std::string doc_id) : cache_(pkg), doc_id_(std::move(doc_id)) {}

  ExtractResult run() {
    ExtractResult result;
    auto main = main_part_name(cache_.package());
    if (!main) throw Error(ErrorCode::unsupported_type, "no main document part");
    main_ = *main;
    if (auto styles = cache_.first_target(main_, rel_type::kStyles))
      styles_ = docx_detail::StyleSheet::parse(cache_.root(*styles));
    if (auto theme = cache_.first_target(main_, rel_type::kTheme)) theme_ = parse_theme(cache_.root(*theme));
    if (auto notes = cache_.first_target(main_, rel_type::kFootnotes)) index_notes(*notes, "footnote", footnotes_);
    if (auto notes = cache_.first_target(main_, rel_type::kEndnotes)) index_notes(*notes, "endnote", endnotes_);

    auto body = cache_.root(main_).child("body");
    Section current;
    walk_body(body, current, result);
    // The trailing sectPr describes the last section.
    close_section(body.child("sectPr"), current, result);
    return result;
  }

 private:
  struct Section {
    TextProps body;
    std::vector<LayoutObject> objects;  // tables and images, document order
    std::vector<std::string> footnote_ids;
    std::vector<std::string> endnote_ids;
  };

  struct HeaderFooterParts {
    std::vector<std::string> headers;
    std::vector<std::string> footers;
  };

  void index_notes(const std::string& part, const char* element, std::map<std::string, xml::Node>& out) {
    for (const auto& note : cache_.root(part).children(element)) {
      auto type = note.attr("w:type").value_or("normal");
      if (type != "normal") continue;
      if (auto id = note.attr("w:id")) out[*id] = note;
    }
  }

  void walk_body(const xml::Node& container, Section& current, ExtractResult& result) {
    for (const auto& node : container.elements()) {
      const auto kind = node.local();
      if (kind == "p") {
        paragraph(node, current.body, current);
        if (auto sect = node.path("pPr/sectPr")) close_section(sect, current, result);
      } else if (kind == "tbl") {
        table(node, current);
      } else if (kind == "sdt") {
        walk_body(node.child("sdtContent"), current, result);
      } else if (kind == "customXml" || kind == "ins" || kind == "smartTag") {
        walk_body(node, current, result);
      }
    }
  }

  void paragraph(const xml::Node& p, TextProps& sink, Section& section) {
    const auto pstyle = p.path("pPr/pStyle").attr("w:val").value_or(styles_.default_paragraph);
    for (const auto& run : p.find_all("r")) {
      for (const auto& ref : run.children("footnoteReference"))
        if (auto id = ref.attr("w:id")) section.footnote_ids.push_back(*id);
      for (const auto& ref : run.children("endnoteReference"))
        if (auto id = ref.attr("w:id")) section.endnote_ids.push_back(*id);
      for (const auto& drawing : run.children("drawing")) image(drawing, section);
      if (docx_detail::has_text(run)) run_props(run, pstyle, sink);
    }
  }

  void image(const xml::Node& drawing, Section& section) {
    for (const auto& holder : drawing.elements()) {
      if (holder.local() != "inline" && holder.local() != "anchor") continue;
      if (!holder.path("graphic/graphicData/pic")) continue;
      auto extent = holder.child("extent");
      if (!extent) continue;
      Geometry g;
      g.width = emu_cm(extent.attr_int("cx").value_or(0));
      g.height = emu_cm(extent.attr_int("cy").value_or(0));
      section.objects.push_back({ObjectKind::image, g});
    }
  }

  void table(const xml::Node& tbl, Section& section) {
    LayoutObject obj{ObjectKind::table};
    TableProps props;
    props.rows = static_cast<int>(tbl.children("tr").size());
    props.cols = static_cast<int>(tbl.path("tblGrid").children("gridCol").size());
    if (props.cols == 0)
      for (const auto& tr : tbl.children("tr"))
        props.cols = std::max(props.cols, static_cast<int>(tr.children("tc").size()));
    obj.table_props = props;
    const auto mark = static_cast<std::ptrdiff_t>(section.objects.size());
    TextProps text;
    for (const auto& p : tbl.find_all("p")) paragraph(p, text, section);
    obj.text_props = std::move(text);
    // The table precedes any image found inside its cells.
    section.objects.insert(section.objects.begin() + mark, std::move(obj));
  }

  // Resolution order: direct formatting, character style, paragraph style,
  // document defaults.
  void run_props(const xml::Node& run, const std::string& pstyle, TextProps& sink) {
    std::vector<xml::Node> sources{run.child("rPr")};
    if (auto rstyle = run.path("rPr/rStyle").attr("w:val")) styles_.chain(*rstyle, sources);
    styles_.chain(pstyle, sources);
    sources.push_back(styles_.default_rpr);

    std::optional<double> size;
    std::optional<std::string> color;
    std::optional<std::string> face;
    bool color_unresolved = false;
    for (const auto& src : sources) {
      if (!src) continue;
      if (!size)
        if (auto sz = src.child("sz").attr_int("w:val")) size = convert_length(*sz, RawUnit::half_point).value;
      if (!color && !color_unresolved)
        if (auto c = src.child("color")) {
          // A theme color overrides w:val, which only caches its last rendering.
          auto val = c.attr("w:val").value_or("");
          if (auto theme_color = c.attr("w:themeColor")) {
            auto slot = docx_detail::theme_slot(*theme_color);
            if (slot && theme_)
              if (auto it = theme_->scheme_colors.find(*slot); it != theme_->scheme_colors.end()) color = it->second;
            if (!color) color_unresolved = true;  // unresolvable: recorded as absent
          } else if (auto hex = text::normalize_hex_color(val)) {
            color = hex;
          } else if (val == "auto") {
            color = "000000";
          }
        }
      if (!face)
        if (auto fonts = src.child("rFonts")) {
          if (auto ascii = fonts.attr("w:ascii")) face = text::to_lower(*ascii);
          else if (auto hansi = fonts.attr("w:hAnsi")) face = text::to_lower(*hansi);
          else if (auto th = fonts.attr("w:asciiTheme"); th && theme_)
            face = resolve_typeface(th->starts_with("major") ? "+mj-lt" : "+mn-lt", &*theme_);
        }
    }
    if (!color && !color_unresolved) color = "000000";
    if (!face) face = theme_ ? resolve_typeface("+mn-lt", &*theme_) : std::optional<std::string>("times new roman");

    sink.font_sizes.push_back(size.value_or(10.0));
    if (color) sink.font_colors.push_back(*color);
    if (face) sink.font_names.push_back(*face);
  }

  TextProps part_text(const std::string& part) {
    TextProps text;
    Section scratch;
    for (const auto& p : cache_.root(part).find_all("p")) paragraph(p, text, scratch);
    return text;
  }

  TextProps note_text(const xml::Node& note) {
    TextProps text;
    Section scratch;
    for (const auto& p : note.find_all("p")) paragraph(p, text, scratch);
    return text;
  }

  void close_section(const xml::Node& sect, Section& current, ExtractResult& result) {
    ++section_index_;
    try {
      PageFeature page{doc_id_, DocType::wordprocessing, section_index_, page_geometry(sect), {}};
      if (!current.body.empty()) page.objects.push_back({ObjectKind::body_text, std::nullopt, current.body});
      for (auto& obj : current.objects) page.objects.push_back(std::move(obj));

      // Sections without their own references continue the previous ones.
      HeaderFooterParts hf;
      for (const auto& ref : sect.children("headerReference"))
        if (auto t = cache_.target(main_, ref.attr_local("id", true).value_or(""))) hf.headers.push_back(*t);
      for (const auto& ref : sect.children("footerReference"))
        if (auto t = cache_.target(main_, ref.attr_local("id", true).value_or(""))) hf.footers.push_back(*t);
      if (hf.headers.empty()) hf.headers = previous_.headers;
      if (hf.footers.empty()) hf.footers = previous_.footers;
      previous_ = hf;
      for (auto [parts, kind] : {std::pair{&hf.headers, ObjectKind::header}, std::pair{&hf.footers, ObjectKind::footer}}) {
        TextProps text;
        for (const auto& part : *parts) text.append(part_text(part));
        if (!text.empty()) page.objects.push_back({kind, std::nullopt, std::move(text)});
      }

      for (const auto& id : current.footnote_ids)
        if (auto it = footnotes_.find(id); it != footnotes_.end()) {
          auto text = note_text(it->second);
          if (!text.empty()) page.objects.push_back({ObjectKind::footnote, std::nullopt, std::move(text)});
        }
      // Endnotes have no query row of their own; they count as body text.
      TextProps endnotes;
      for (const auto& id : current.endnote_ids)
        if (auto it = endnotes_.find(id); it != endnotes_.end()) endnotes.append(note_text(it->second));
      if (!endnotes.empty()) page.objects.push_back({ObjectKind::body_text, std::nullopt, std::move(endnotes)});

      result.pages.push_back(std::move(page));
    } catch (const std::exception& e) {
      result.warnings.push_back(doc_id_ + ": section " + std::to_string(section_index_) + ": " + e.what());
    }
    current = Section{};
  }

  static PageGeometry page_geometry(const xml::Node& sect) {
    PageGeometry g;
    auto size = sect.child("pgSz");
    g.width = twip_cm(size.attr_int("w:w").value_or(12240));
    g.height = twip_cm(size.attr_int("w:h").value_or(15840));
    if (*g.width <= 0 || *g.height <= 0) throw Error(ErrorCode::parse_failure, "non-positive page size");

    auto mar = sect.child("pgMar");
    auto twips = [&](const char* name, long long fallback) {
      return twip_cm(std::llabs(mar.attr_int(name).value_or(fallback)));
    };
    auto cols = sect.child("cols");
    Margins m;
    m.upper = twips("w:top", 1440);
    m.right = twips("w:right", 1800);
    m.lower = twips("w:bottom", 1440);
    m.left = twips("w:left", 1800);
    m.header = twips("w:header", 720);
    m.footer = twips("w:footer", 720);
    m.gutter = twips("w:gutter", 0);
    m.column = twip_cm(cols.attr_int("w:space").value_or(720));
    g.margins = m;
    g.columns = static_cast<int>(std::max<long long>(1, cols.attr_int("w:num").value_or(1)));
    return g;
  }

  PartCache cache_;
  std::string doc_id_;
  std::string main_;
  docx_detail::StyleSheet styles_;
  std::optional<Theme> theme_;
  std::map<std::string, xml::Node> footnotes_;
  std::map<std::string, xml::Node> endnotes_;
  HeaderFooterParts previous_;
  int section_index_ = 0;
};

inline ExtractResult extract_wordprocessing(const OpcPackage& pkg, const std::string& doc_id) {
  return WordprocessingExtractor(pkg, doc_id).run();
}

}  // namespace layoutret::extract
