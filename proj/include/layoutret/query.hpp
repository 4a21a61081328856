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

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "layoutret/extract/spreadsheet.hpp"
#include "layoutret/registry.hpp"
#include "layoutret/units.hpp"

namespace layoutret {

enum class Unit { cm, inch };

inline std::string_view to_string(Unit u) { return u == Unit::cm ? "cm" : "inch"; }

inline std::optional<Unit> parse_unit(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "cm" || v == "centimeter" || v == "centimeters") return Unit::cm;
  if (v == "inch" || v == "inches" || v == "in") return Unit::inch;
  return std::nullopt;
}

// One comparable value. Text and hex colors are held normalized
// (case-folded text, uppercase RRGGBB).
using Scalar = std::variant<double, long long, std::string, CellRef, ChartProps>;

struct QueryValue {
  ValueClass value_class = ValueClass::number;
  std::vector<Scalar> values;  // exactly one unless the field is a list

  bool operator==(const QueryValue&) const = default;
};

struct QueryItem {
  QueryKind kind = QueryKind::page_geometry;
  std::map<std::string, QueryValue> constraints;  // canonical field name -> value

  bool operator==(const QueryItem&) const = default;
};

struct RetrievalQuery {
  DocType doc_type = DocType::presentation;
  Unit unit = Unit::cm;                // as authored; lengths below are already cm
  std::vector<QueryItem> items;
  std::optional<double> threshold;     // nullopt means auto
  std::string name;                    // optional label, used by reports
  std::optional<std::string> group;    // ground-truth group for evaluation

  bool operator==(const RetrievalQuery&) const = default;
};

inline std::size_t query_count(const RetrievalQuery& rq) { return rq.items.size(); }

inline std::string render(const Scalar& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          std::ostringstream out;
          out << text::canonical(x);
          return out.str();
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, CellRef>) {
          return to_string(x);
        } else {
          return x.chart_type + (x.dimensionality == 3 ? " (3-D)" : " (2-D)");
        }
      },
      v);
}

inline std::string render(const QueryValue& v) {
  std::string out;
  for (const auto& s : v.values) {
    if (!out.empty()) out += ", ";
    out += render(s);
  }
  return out;
}

namespace query_detail {

using json = nlohmann::json;

[[noreturn]] inline void fail(ErrorCode code, const std::string& where, const std::string& why) {
  throw Error(code, where + ": " + why);
}

// Splits a JSON value into raw scalar tokens: arrays element-wise, strings
// on commas, numbers as-is.
inline std::vector<json> tokens(const json& v) {
  std::vector<json> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(e);
  } else if (v.is_string()) {
    for (auto& part : text::split(v.get<std::string>(), ',')) out.emplace_back(part);
  } else {
    out.push_back(v);
  }
  return out;
}

inline Scalar parse_scalar(const json& tok, const QueryFieldSpec& spec, Unit unit, const std::string& where) {
  switch (spec.value_class) {
    case ValueClass::number: {
      std::optional<double> v;
      if (tok.is_number()) v = tok.get<double>();
      else if (tok.is_string()) v = text::parse_double(tok.get<std::string>());
      if (!v) fail(ErrorCode::validation_error, where, "expected a number, got " + tok.dump());
      if (spec.is_length && unit == Unit::inch) *v = inch_to_cm(*v);
      return text::canonical(*v);
    }
    case ValueClass::integer: {
      std::optional<long long> v;
      if (tok.is_number_integer()) v = tok.get<long long>();
      else if (tok.is_number_float() && tok.get<double>() == std::floor(tok.get<double>()))
        v = static_cast<long long>(tok.get<double>());
      else if (tok.is_string()) v = text::parse_int(tok.get<std::string>());
      if (!v) fail(ErrorCode::validation_error, where, "expected an integer, got " + tok.dump());
      return *v;
    }
    case ValueClass::hex_color: {
      std::optional<std::string> v;
      if (tok.is_string()) v = text::normalize_hex_color(tok.get<std::string>());
      if (!v) fail(ErrorCode::validation_error, where, "expected a 6-digit hex color, got " + tok.dump());
      return *v;
    }
    case ValueClass::text: {
      if (!tok.is_string() || text::trim(tok.get<std::string>()).empty())
        fail(ErrorCode::validation_error, where, "expected text, got " + tok.dump());
      return text::to_lower(text::trim(tok.get<std::string>()));
    }
    case ValueClass::cell_ref: {
      std::optional<CellRef> v;
      if (tok.is_string()) v = parse_cell_ref(tok.get<std::string>());
      if (!v) fail(ErrorCode::validation_error, where, "expected an R1C1 reference, got " + tok.dump());
      return *v;
    }
    case ValueClass::chart_type: {
      if (!tok.is_string() || text::trim(tok.get<std::string>()).empty())
        fail(ErrorCode::validation_error, where, "expected a chart type, got " + tok.dump());
      return extract::xlsx_detail::chart_props_of(text::trim(tok.get<std::string>()));
    }
  }
  fail(ErrorCode::validation_error, where, "unsupported value");
}

inline void check_bounds(const Scalar& v, const QueryFieldSpec& spec, const std::string& where) {
  if (spec.method != Method::am3) return;
  const double q = std::holds_alternative<double>(v) ? std::get<double>(v) : static_cast<double>(std::get<long long>(v));
  const double lo = spec.bound_min.value_or(0.0);
  if (q < lo) fail(ErrorCode::validation_error, where, render(v) + " is below the minimum " + render(Scalar{lo}));
  if (spec.bound_max.kind == BoundKind::fixed && q > spec.bound_max.value)
    fail(ErrorCode::validation_error, where, render(v) + " is above the maximum " + render(Scalar{spec.bound_max.value}));
}

inline QueryItem parse_item(const json& j, DocType doc_type, Unit unit, std::size_t index) {
  const std::string where = "items[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(ErrorCode::syntax_error, where, "expected an object");

  std::string kind_name;
  const json* fields = nullptr;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) fail(ErrorCode::syntax_error, where, "kind must be a string");
    kind_name = j["kind"].get<std::string>();
    auto it = j.find("fields");
    if (it == j.end()) fail(ErrorCode::empty_query, where, "item has no fields");
    fields = &*it;
  } else if (j.size() == 1) {
    kind_name = j.begin().key();
    fields = &j.begin().value();
  } else {
    fail(ErrorCode::syntax_error, where, "expected {kind, fields} or {<kind>: {...}}");
  }

  auto kind = parse_query_kind(kind_name, doc_type);
  if (!kind || !kind_valid_for(doc_type, *kind))
    fail(ErrorCode::unknown_field, where,
         std::string(to_string(doc_type)) + "/" + kind_name + " is not a queryable kind");
  if (!fields->is_object()) fail(ErrorCode::syntax_error, where, "fields must be an object");
  if (fields->empty()) fail(ErrorCode::empty_query, where, "item has no fields");

  QueryItem item{*kind, {}};
  for (const auto& [raw_name, raw_value] : fields->items()) {
    const auto name = canonical_field_name(raw_name, *kind);
    const auto* spec = find_field_spec(doc_type, *kind, name);
    const std::string field_where = where + "." + raw_name;
    if (!spec)
      fail(ErrorCode::unknown_field, field_where,
           std::string(to_string(doc_type)) + "/" + std::string(to_string(*kind)) + "/" + raw_name +
               " is not a registered field");
    QueryValue value{spec->value_class, {}};
    auto toks = tokens(raw_value);
    if (toks.empty()) fail(ErrorCode::validation_error, field_where, "empty value list");
    if (!spec->is_list && toks.size() != 1)
      fail(ErrorCode::validation_error, field_where, "expects a single value");
    for (const auto& tok : toks) {
      auto v = parse_scalar(tok, *spec, unit, field_where);
      check_bounds(v, *spec, field_where);
      value.values.push_back(std::move(v));
    }
    if (item.constraints.contains(name)) fail(ErrorCode::validation_error, field_where, "field given twice");
    item.constraints.emplace(name, std::move(value));
  }
  return item;
}

}  // namespace query_detail

// Parses and validates a query document. `default_unit` applies when the
// document does not name one.
inline RetrievalQuery parse_query_text(std::string_view text_in, Unit default_unit = Unit::cm) {
  using query_detail::fail;
  using query_detail::json;
  json j;
  try {
    j = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::syntax_error, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::syntax_error, "query", "top level must be an object");

  RetrievalQuery rq;
  if (!j.contains("doc_type") || !j["doc_type"].is_string()) fail(ErrorCode::syntax_error, "doc_type", "required string");
  auto type = parse_doc_type(j["doc_type"].get<std::string>());
  if (!type) fail(ErrorCode::unknown_field, "doc_type", j["doc_type"].dump() + " is not a document type");
  rq.doc_type = *type;

  rq.unit = default_unit;
  if (j.contains("unit")) {
    auto unit = j["unit"].is_string() ? parse_unit(j["unit"].get<std::string>()) : std::nullopt;
    if (!unit) fail(ErrorCode::unit_error, "unit", j["unit"].dump() + " is not cm or inch");
    rq.unit = *unit;
  }

  if (j.contains("threshold") && !(j["threshold"].is_string() && j["threshold"].get<std::string>() == "auto")) {
    if (!j["threshold"].is_number()) fail(ErrorCode::validation_error, "threshold", "expected auto or a number");
    double t = j["threshold"].get<double>();
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::validation_error, "threshold", "must lie in [0, 1]");
    rq.threshold = t;
  }
  if (j.contains("name") && j["name"].is_string()) rq.name = j["name"].get<std::string>();
  if (j.contains("group") && j["group"].is_string()) rq.group = j["group"].get<std::string>();

  auto items = j.find("items");
  if (items == j.end() || !items->is_array() || items->empty()) fail(ErrorCode::empty_query, "items", "no query items");
  for (std::size_t i = 0; i < items->size(); ++i)
    rq.items.push_back(query_detail::parse_item((*items)[i], rq.doc_type, rq.unit, i));
  return rq;
}

inline RetrievalQuery parse_query_file(const std::filesystem::path& path, Unit default_unit = Unit::cm) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto rq = parse_query_text(buf.str(), default_unit);
  if (rq.name.empty()) rq.name = path.stem().string();
  return rq;
}

// Canonical JSON form. Lengths are written in centimeters, so the result
// always declares unit "cm".
inline nlohmann::json serialize_query(const RetrievalQuery& rq) {
  using nlohmann::json;
  auto scalar = [](const Scalar& v) -> json {
    return std::visit(
        [](const auto& x) -> json {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double> || std::is_same_v<T, long long> || std::is_same_v<T, std::string>)
            return x;
          else if constexpr (std::is_same_v<T, CellRef>)
            return to_string(x);
          else
            return extract::xlsx_detail::chart_element_name(x);
        },
        v);
  };
  json items = json::array();
  for (const auto& item : rq.items) {
    json fields = json::object();
    for (const auto& [name, value] : item.constraints) {
      if (value.values.size() == 1 && !find_field_spec(rq.doc_type, item.kind, name)->is_list) {
        fields[name] = scalar(value.values.front());
      } else {
        json list = json::array();
        for (const auto& v : value.values) list.push_back(scalar(v));
        fields[name] = std::move(list);
      }
    }
    items.push_back({{"kind", to_string(item.kind)}, {"fields", std::move(fields)}});
  }
  json out{{"doc_type", to_string(rq.doc_type)}, {"unit", "cm"}, {"items", std::move(items)}};
  out["threshold"] = rq.threshold ? json(*rq.threshold) : json("auto");
  if (!rq.name.empty()) out["name"] = rq.name;
  if (rq.group) out["group"] = *rq.group;
  return out;
}

}  // namespace layoutret
