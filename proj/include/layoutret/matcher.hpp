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
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layoutret/query.hpp"
#include "layoutret/store.hpp"
#include "layoutret/util/parallel.hpp"

namespace layoutret {

enum class AssignmentMode { independent, one_to_one };

struct MatcherConfig {
  // Decay rate of the exponential similarity; 4*lambda is the prefactor, so
  // the default 0.25 gives s = 1 at zero distance.
  double lambda = 0.25;
  // Multiplier from normalized distance (d / distance_range) to the
  // exponent argument. 16 with lambda 0.25 gives s = exp(-4 * d / range).
  double decay_scale = 16.0;
  // Query count -> S-value anchors; linear between anchors, flat outside.
  std::map<int, double> threshold_table{{3, 0.90}, {4, 0.81}, {5, 0.78}, {10, 0.72}};
  AssignmentMode assignment_mode = AssignmentMode::independent;

  void validate() const {
    if (!(lambda > 0) || !std::isfinite(lambda)) throw Error(ErrorCode::invalid_config, "lambda must be > 0");
    if (!(decay_scale > 0) || !std::isfinite(decay_scale))
      throw Error(ErrorCode::invalid_config, "decay_scale must be > 0");
    if (threshold_table.empty()) throw Error(ErrorCode::invalid_config, "threshold table is empty");
    for (const auto& [n, s] : threshold_table) {
      if (n < 1) throw Error(ErrorCode::invalid_config, "threshold table keys must be >= 1");
      if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::invalid_config, "threshold table values must lie in [0, 1]");
    }
  }
};

inline double default_threshold(std::size_t n, const MatcherConfig& cfg = {}) {
  const auto& table = cfg.threshold_table;
  const auto key = static_cast<int>(std::min<std::size_t>(n, std::numeric_limits<int>::max()));
  auto hi = table.lower_bound(key);
  if (hi == table.end()) return std::prev(hi)->second;
  if (hi->first == key || hi == table.begin()) return hi->second;
  auto lo = std::prev(hi);
  const double t = static_cast<double>(key - lo->first) / static_cast<double>(hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

// ---------------------------------------------------------------------------
// Field similarity functions

inline double em(const Scalar& query, const Scalar& feature) {
  if (query.index() != feature.index()) throw Error(ErrorCode::type_mismatch, "EM on different value classes");
  return std::visit(
      [&](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        const auto& f = std::get<T>(feature);
        if constexpr (std::is_same_v<T, double>)
          return text::to_ticks(q) == text::to_ticks(f) ? 1.0 : 0.0;
        else if constexpr (std::is_same_v<T, std::string>)
          return text::iequals(q, f) ? 1.0 : 0.0;
        else
          return q == f ? 1.0 : 0.0;
      },
      query);
}

// Share of query values found among the feature values; each feature value
// satisfies at most one query value.
inline double am1(std::span<const Scalar> query, std::span<const Scalar> feature) {
  if (query.empty()) return 0.0;
  std::vector<bool> used(feature.size(), false);
  double hits = 0;
  for (const auto& q : query) {
    for (std::size_t i = 0; i < feature.size(); ++i) {
      if (!used[i] && em(q, feature[i]) == 1.0) {
        used[i] = true;
        hits += 1;
        break;
      }
    }
  }
  return hits / static_cast<double>(query.size());
}

inline double am2(const ChartProps& query, const ChartProps& feature) {
  if (!text::iequals(query.chart_type, feature.chart_type)) return 0.0;
  return query.dimensionality == feature.dimensionality ? 1.0 : 0.5;
}

// Outcome of the exponential-decay methods, kept for score traces.
struct DecayScore {
  double s = 0;
  double d = 0;               // raw distance between query and feature
  double distance_range = 0;  // largest distance any in-bounds feature could have
  double x = 0;               // exponent argument
  bool degenerate = false;    // distance_range was 0; s fell back to exact match
};

inline double decay(double normalized, const MatcherConfig& cfg, double& x) {
  x = cfg.decay_scale * std::min(normalized, 1.0);
  return std::clamp(4.0 * cfg.lambda * std::exp(-cfg.lambda * x), 0.0, 1.0);
}

// distance_range is computed on the canonical 1e-4 grid so that range
// endpoints written in decimal give exact decimal ranges.
inline DecayScore am3(double q, double f, double bound_min, double bound_max, const MatcherConfig& cfg) {
  DecayScore r;
  const long long qt = text::to_ticks(q);
  const long long range_ticks = std::max(std::llabs(qt - text::to_ticks(bound_min)), std::llabs(qt - text::to_ticks(bound_max)));
  r.distance_range = static_cast<double>(range_ticks) / text::kTicksPerUnit;
  r.d = std::abs(f - q);
  if (range_ticks == 0) {
    r.degenerate = true;
    r.s = em(Scalar{q}, Scalar{f});
    return r;
  }
  r.s = decay(r.d / r.distance_range, cfg, r.x);
  return r;
}

struct Point {
  double x = 0;
  double y = 0;
};

// Axis-aligned frame a coordinate lives in: a slide, or a sheet's used range.
struct Frame {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

inline double farthest_corner_distance(Point q, const Frame& frame) {
  double best = 0;
  for (double cx : {frame.x0, frame.x1})
    for (double cy : {frame.y0, frame.y1}) best = std::max(best, std::hypot(cx - q.x, cy - q.y));
  return best;
}

inline DecayScore am4(Point q, Point f, const Frame& frame, const MatcherConfig& cfg) {
  DecayScore r;
  r.distance_range = farthest_corner_distance(q, frame);
  r.d = std::hypot(f.x - q.x, f.y - q.y);
  if (r.distance_range == 0) {
    r.degenerate = true;
    r.s = (em(Scalar{q.x}, Scalar{f.x}) == 1.0 && em(Scalar{q.y}, Scalar{f.y}) == 1.0) ? 1.0 : 0.0;
    return r;
  }
  r.s = decay(r.d / r.distance_range, cfg, r.x);
  return r;
}

inline DecayScore am4(Point q, Point f, double page_w, double page_h, const MatcherConfig& cfg) {
  return am4(q, f, Frame{0, 0, page_w, page_h}, cfg);
}

// ---------------------------------------------------------------------------
// Item and page scoring

struct FieldScore {
  std::string field;
  std::string query_value;
  std::string feature_value;  // "absent" when the candidate lacks the field
  Method method = Method::em;
  std::optional<double> d;
  std::optional<double> distance_range;
  std::optional<double> x;
  double s_value_field = 0;
};

struct ScoreTrace {
  std::size_t item_index = 0;
  QueryKind kind = QueryKind::page_geometry;
  // Ordinal of the matched object within the page; absent for page
  // geometry items and when no object of the kind exists.
  std::optional<std::size_t> matched_object;
  std::vector<FieldScore> fields;
  double s_value_item = 0;

  bool matched_page_geometry() const { return kind == QueryKind::page_geometry; }
};

struct ScoredPage {
  std::string doc_id;
  int page_index = 0;
  double s_value_final = 0;
  std::size_t n = 0;
  std::vector<ScoreTrace> traces;
};

namespace match_detail {

inline const char* kAbsent = "absent";

inline std::optional<double> page_number(const PageGeometry& g, std::string_view field) {
  if (field == "height") return g.height;
  if (field == "width") return g.width;
  if (field == "zoom_scale") return g.zoom_scale ? std::optional<double>(*g.zoom_scale) : std::nullopt;
  if (field == "columns") return g.columns ? std::optional<double>(*g.columns) : std::nullopt;
  if (!g.margins) return std::nullopt;
  const auto& m = *g.margins;
  if (field == "upper_margin") return m.upper;
  if (field == "right_margin") return m.right;
  if (field == "lower_margin") return m.lower;
  if (field == "left_margin") return m.left;
  if (field == "header_margin") return m.header;
  if (field == "footer_margin") return m.footer;
  if (field == "gutter_margin") return m.gutter;
  if (field == "column_margin") return m.column;
  return std::nullopt;
}

inline std::optional<double> object_number(const LayoutObject& o, std::string_view field) {
  if (o.geometry) {
    if (field == "height") return o.geometry->height;
    if (field == "width") return o.geometry->width;
    if (field == "x") return o.geometry->x;
    if (field == "y") return o.geometry->y;
  }
  if (o.table_props) {
    if (field == "rows") return o.table_props->rows;
    if (field == "cols") return o.table_props->cols;
  }
  return std::nullopt;
}

inline std::optional<std::vector<Scalar>> object_list(const LayoutObject& o, std::string_view field) {
  auto strings = [](const std::vector<std::string>& v) { return std::vector<Scalar>(v.begin(), v.end()); };
  if (o.text_props) {
    if (field == "font_size") return std::vector<Scalar>(o.text_props->font_sizes.begin(), o.text_props->font_sizes.end());
    if (field == "font_color") return strings(o.text_props->font_colors);
    if (field == "font_name") return strings(o.text_props->font_names);
  }
  if (o.cell_style_props) {
    if (field == "fill_pattern") return strings(o.cell_style_props->fill_patterns);
    if (field == "fill_color") return strings(o.cell_style_props->fill_colors);
    if (field == "border") return strings(o.cell_style_props->borders);
  }
  return std::nullopt;
}

inline std::optional<CellRef> object_cell(const LayoutObject& o, std::string_view field) {
  if (!o.cell_anchor) return std::nullopt;
  if (field == "from") return o.cell_anchor->from;
  if (field == "to") return o.cell_anchor->to;
  return std::nullopt;
}

inline double as_double(const Scalar& v) {
  return std::holds_alternative<double>(v) ? std::get<double>(v) : static_cast<double>(std::get<long long>(v));
}

inline std::string render_number(std::optional<double> v) { return v ? render(Scalar{*v}) : kAbsent; }

inline double resolve_bound(const Bound& b, const PageGeometry& g) {
  switch (b.kind) {
    case BoundKind::fixed: return b.value;
    case BoundKind::page_width: return g.width.value_or(0);
    case BoundKind::page_height: return g.height.value_or(0);
    case BoundKind::none: break;
  }
  return 0;
}

inline void fill_decay(FieldScore& fs, const DecayScore& r) {
  fs.d = r.d;
  fs.distance_range = r.distance_range;
  if (!r.degenerate) fs.x = r.x;
  fs.s_value_field = r.s;
}

// Scores every constraint of `item` against one candidate: `obj`, or the
// page geometry when obj is null. x and y form a single AM-4 coordinate.
inline std::vector<FieldScore> score_fields(const RetrievalQuery& rq, const QueryItem& item, const PageFeature& pf,
                                            const LayoutObject* obj, const MatcherConfig& cfg) {
  std::vector<FieldScore> out;
  const auto& g = pf.page_geometry;
  const auto* qx = item.constraints.contains("x") ? &item.constraints.at("x") : nullptr;
  const auto* qy = item.constraints.contains("y") ? &item.constraints.at("y") : nullptr;
  bool position_done = false;

  for (const auto& [field, value] : item.constraints) {
    const auto& spec = registry_lookup(rq.doc_type, item.kind, field);
    FieldScore fs{field, render(value), kAbsent, spec.method};
    const Scalar& q = value.values.front();

    switch (spec.method) {
      case Method::em: {
        if (value.value_class == ValueClass::text) {
          auto shape = obj ? obj->shape_type : std::nullopt;
          if (shape) {
            fs.feature_value = *shape;
            fs.s_value_field = em(q, Scalar{*shape});
          }
        } else {
          auto f = obj ? object_number(*obj, field) : std::nullopt;
          if (f) {
            fs.feature_value = render(Scalar{static_cast<long long>(*f)});
            fs.s_value_field = em(q, Scalar{static_cast<long long>(std::llround(*f))});
          }
        }
        break;
      }
      case Method::am1: {
        auto f = obj ? object_list(*obj, field) : std::nullopt;
        if (f) {
          fs.feature_value = render(QueryValue{value.value_class, *f});
          fs.s_value_field = am1(value.values, *f);
        }
        break;
      }
      case Method::am2: {
        if (obj && obj->chart_props) {
          fs.feature_value = render(Scalar{*obj->chart_props});
          fs.s_value_field = am2(std::get<ChartProps>(q), *obj->chart_props);
        }
        break;
      }
      case Method::am3: {
        auto f = obj ? object_number(*obj, field) : page_number(g, field);
        fs.feature_value = render_number(f);
        if (f) fill_decay(fs, am3(as_double(q), *f, spec.bound_min.value_or(0.0), resolve_bound(spec.bound_max, g), cfg));
        break;
      }
      case Method::am4: {
        if (value.value_class == ValueClass::cell_ref) {
          auto f = obj ? object_cell(*obj, field) : std::nullopt;
          if (f) {
            fs.feature_value = to_string(*f);
            const auto& qc = std::get<CellRef>(q);
            Frame frame{1, 1, static_cast<double>(g.used_rows.value_or(1)), static_cast<double>(g.used_cols.value_or(1))};
            fill_decay(fs, am4(Point{static_cast<double>(qc.row), static_cast<double>(qc.col)},
                               Point{static_cast<double>(f->row), static_cast<double>(f->col)}, frame, cfg));
          }
          break;
        }
        if (position_done) continue;
        position_done = true;
        // A lone x or y is a coordinate along one axis.
        fs.field = qx && qy ? "x,y" : field;
        fs.query_value = qx && qy ? render(*qx) + ", " + render(*qy) : render(value);
        auto fx = obj ? object_number(*obj, "x") : std::nullopt;
        auto fy = obj ? object_number(*obj, "y") : std::nullopt;
        if ((qx && !fx) || (qy && !fy)) break;
        fs.feature_value = qx && qy ? render_number(fx) + ", " + render_number(fy) : render_number(qx ? fx : fy);
        Point qp{qx ? as_double(qx->values.front()) : 0.0, qy ? as_double(qy->values.front()) : 0.0};
        Point fp{qx ? *fx : 0.0, qy ? *fy : 0.0};
        Frame frame{0, 0, qx ? g.width.value_or(0) : 0.0, qy ? g.height.value_or(0) : 0.0};
        fill_decay(fs, am4(qp, fp, frame, cfg));
        break;
      }
    }
    out.push_back(std::move(fs));
  }
  return out;
}

inline double mean_score(const std::vector<FieldScore>& fields) {
  if (fields.empty()) return 0.0;
  double sum = 0;
  for (const auto& f : fields) sum += f.s_value_field;
  return sum / static_cast<double>(fields.size());
}

inline ScoreTrace unmatched(const RetrievalQuery& rq, std::size_t index, const PageFeature& pf,
                            const MatcherConfig& cfg) {
  const auto& item = rq.items[index];
  ScoreTrace t{index, item.kind, std::nullopt, score_fields(rq, item, pf, nullptr, cfg), 0.0};
  for (auto& f : t.fields) {
    f.feature_value = kAbsent;
    f.d.reset();
    f.distance_range.reset();
    f.x.reset();
    f.s_value_field = 0.0;
  }
  return t;
}

}  // namespace match_detail

// Scores one query item on a page. Object items are evaluated against every
// object of the item's kind and the best one is kept (lowest ordinal on
// ties); a page without such objects scores 0 for the item.
inline ScoreTrace score_item(const RetrievalQuery& rq, std::size_t index, const PageFeature& pf,
                             const MatcherConfig& cfg) {
  using namespace match_detail;
  const auto& item = rq.items.at(index);
  if (item.kind == QueryKind::page_geometry) {
    ScoreTrace t{index, item.kind, std::nullopt, score_fields(rq, item, pf, nullptr, cfg), 0.0};
    t.s_value_item = mean_score(t.fields);
    return t;
  }
  const auto kind = *object_kind_of(item.kind);
  std::optional<ScoreTrace> best;
  for (std::size_t i = 0; i < pf.objects.size(); ++i) {
    if (pf.objects[i].kind != kind) continue;
    ScoreTrace t{index, item.kind, i, score_fields(rq, item, pf, &pf.objects[i], cfg), 0.0};
    t.s_value_item = mean_score(t.fields);
    if (!best || t.s_value_item > best->s_value_item) best = std::move(t);
  }
  if (!best) return unmatched(rq, index, pf, cfg);
  return *best;
}

inline ScoreTrace score_item(const QueryItem& item, DocType doc_type, const PageFeature& pf, const MatcherConfig& cfg) {
  RetrievalQuery rq;
  rq.doc_type = doc_type;
  rq.items = {item};
  return score_item(rq, 0, pf, cfg);
}

namespace match_detail {

// Greedy assignment: repeatedly take the highest remaining (item, object)
// score whose item and object are both still free.
inline std::vector<ScoreTrace> assign_one_to_one(const RetrievalQuery& rq, const PageFeature& pf,
                                                 const MatcherConfig& cfg) {
  std::vector<std::optional<ScoreTrace>> chosen(rq.items.size());
  std::vector<ScoreTrace> candidates;
  for (std::size_t i = 0; i < rq.items.size(); ++i) {
    const auto& item = rq.items[i];
    if (item.kind == QueryKind::page_geometry) {
      chosen[i] = score_item(rq, i, pf, cfg);
      continue;
    }
    const auto kind = *object_kind_of(item.kind);
    for (std::size_t o = 0; o < pf.objects.size(); ++o) {
      if (pf.objects[o].kind != kind) continue;
      ScoreTrace t{i, item.kind, o, score_fields(rq, item, pf, &pf.objects[o], cfg), 0.0};
      t.s_value_item = mean_score(t.fields);
      candidates.push_back(std::move(t));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const ScoreTrace& a, const ScoreTrace& b) {
    if (a.s_value_item != b.s_value_item) return a.s_value_item > b.s_value_item;
    if (a.item_index != b.item_index) return a.item_index < b.item_index;
    return *a.matched_object < *b.matched_object;
  });
  std::vector<bool> used(pf.objects.size(), false);
  for (auto& c : candidates) {
    if (chosen[c.item_index] || used[*c.matched_object]) continue;
    used[*c.matched_object] = true;
    chosen[c.item_index] = std::move(c);
  }
  std::vector<ScoreTrace> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) out.push_back(chosen[i] ? std::move(*chosen[i]) : unmatched(rq, i, pf, cfg));
  return out;
}

}  // namespace match_detail

// s_value_final = mean of the item scores.
inline ScoredPage score_page(const RetrievalQuery& rq, const PageFeature& pf, const MatcherConfig& cfg) {
  ScoredPage page{pf.doc_id, pf.page_index, 0.0, rq.items.size(), {}};
  if (cfg.assignment_mode == AssignmentMode::one_to_one) {
    page.traces = match_detail::assign_one_to_one(rq, pf, cfg);
  } else {
    for (std::size_t i = 0; i < rq.items.size(); ++i) page.traces.push_back(score_item(rq, i, pf, cfg));
  }
  double sum = 0;
  for (const auto& t : page.traces) sum += t.s_value_item;
  page.s_value_final = page.traces.empty() ? 0.0 : sum / static_cast<double>(page.traces.size());
  return page;
}

struct SearchOptions {
  std::optional<double> threshold;  // overrides the query's own threshold
  std::optional<std::size_t> top_k;
  unsigned workers = 1;
};

struct SearchResult {
  std::vector<ScoredPage> pages;  // ranked
  std::size_t scanned = 0;        // pages of the query's document type
  double threshold = 0;           // threshold actually applied
};

inline double effective_threshold(const RetrievalQuery& rq, const SearchOptions& opts, const MatcherConfig& cfg) {
  if (opts.threshold) return *opts.threshold;
  if (rq.threshold) return *rq.threshold;
  return default_threshold(query_count(rq), cfg);
}

// Ranked retrieval: every page of the query's document type is scored,
// pages below the threshold are dropped, and the rest are ordered by
// descending s_value_final, then doc_id, then page_index.
inline SearchResult search(const RetrievalQuery& rq, const FeatureDb& db, const MatcherConfig& cfg,
                           const SearchOptions& opts = {}) {
  cfg.validate();
  std::vector<const PageFeature*> pages;
  for (const auto& page : pages_of_type(db, rq.doc_type)) pages.push_back(&page);

  SearchResult result;
  result.scanned = pages.size();
  result.threshold = effective_threshold(rq, opts, cfg);

  std::vector<std::optional<ScoredPage>> scored(pages.size());
  parallel_for(pages.size(), opts.workers, [&](std::size_t i) {
    auto s = score_page(rq, *pages[i], cfg);
    if (s.s_value_final >= result.threshold) scored[i] = std::move(s);
  });
  for (auto& s : scored)
    if (s) result.pages.push_back(std::move(*s));
  std::stable_sort(result.pages.begin(), result.pages.end(), [](const ScoredPage& a, const ScoredPage& b) {
    if (a.s_value_final != b.s_value_final) return a.s_value_final > b.s_value_final;
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    return a.page_index < b.page_index;
  });
  if (opts.top_k && result.pages.size() > *opts.top_k) result.pages.resize(*opts.top_k);
  return result;
}

// ---------------------------------------------------------------------------
// Result records

inline json to_json(const ScoreTrace& t) {
  json fields = json::array();
  for (const auto& f : t.fields) {
    json e{{"field", f.field},
           {"query_value", f.query_value},
           {"feature_value", f.feature_value},
           {"method", to_string(f.method)},
           {"s_value_field", f.s_value_field}};
    e["d"] = f.d ? json(*f.d) : json(nullptr);
    e["distance_range"] = f.distance_range ? json(*f.distance_range) : json(nullptr);
    e["x"] = f.x ? json(*f.x) : json(nullptr);
    fields.push_back(std::move(e));
  }
  json j{{"item_index", t.item_index}, {"kind", to_string(t.kind)}, {"fields", std::move(fields)},
         {"s_value_item", t.s_value_item}};
  if (t.matched_page_geometry())
    j["matched"] = "page_geometry";
  else if (t.matched_object)
    j["matched"] = {{"object", *t.matched_object}};
  else
    j["matched"] = nullptr;
  return j;
}

inline json to_json(const ScoredPage& p, bool with_traces = true) {
  json j{{"doc_id", p.doc_id}, {"page_index", p.page_index}, {"s_value_final", p.s_value_final}, {"n", p.n}};
  if (with_traces) {
    json traces = json::array();
    for (const auto& t : p.traces) traces.push_back(to_json(t));
    j["traces"] = std::move(traces);
  }
  return j;
}

}  // namespace layoutret
