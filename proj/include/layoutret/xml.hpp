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

#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "layoutret/error.hpp"
#include "layoutret/util/text.hpp"

// Read-only element view over Boost.PropertyTree's XML representation.
// Elements are matched by local name so documents written with unusual
// namespace prefixes still resolve; attributes are matched by qualified name
// unless the *_local accessors are used.
namespace layoutret::xml {

using Tree = boost::property_tree::ptree;

inline std::string_view local_name(std::string_view qname) {
  auto pos = qname.find(':');
  return pos == std::string_view::npos ? qname : qname.substr(pos + 1);
}

inline bool is_element_key(std::string_view key) {
  return !key.empty() && key.front() != '<';
}

class Node {
 public:
  Node() = default;
  Node(const Tree* tree, std::string_view qname) : tree_(tree), qname_(qname) {}

  explicit operator bool() const { return tree_ != nullptr; }
  std::string_view name() const { return qname_; }
  std::string_view local() const { return local_name(qname_); }

  std::vector<Node> elements() const {
    std::vector<Node> out;
    if (!tree_) return out;
    for (const auto& [key, child] : *tree_)
      if (is_element_key(key)) out.emplace_back(&child, key);
    return out;
  }

  std::vector<Node> children(std::string_view local_name_) const {
    std::vector<Node> out;
    if (!tree_) return out;
    for (const auto& [key, child] : *tree_)
      if (is_element_key(key) && local_name(key) == local_name_) out.emplace_back(&child, key);
    return out;
  }

  Node child(std::string_view local_name_) const {
    if (!tree_) return {};
    for (const auto& [key, child] : *tree_)
      if (is_element_key(key) && local_name(key) == local_name_) return {&child, key};
    return {};
  }

  // Follows a '/'-separated chain of local names.
  Node path(std::string_view chain) const {
    Node cur = *this;
    for (const auto& step : text::split(chain, '/')) {
      if (!cur) break;
      cur = cur.child(step);
    }
    return cur;
  }

  // All descendants with the given local name, document order, not
  // descending into a match.
  std::vector<Node> find_all(std::string_view local_name_) const {
    std::vector<Node> out;
    collect(local_name_, out);
    return out;
  }

  std::optional<std::string> attr(std::string_view qname) const {
    if (!tree_) return std::nullopt;
    auto attrs = tree_->get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    for (const auto& [key, value] : *attrs)
      if (key == qname) return value.data();
    return std::nullopt;
  }

  // First attribute whose local name matches, with or without a prefix.
  // `prefixed_only` restricts the match to namespaced attributes (r:id vs id).
  std::optional<std::string> attr_local(std::string_view local_name_,
                                        bool prefixed_only = false) const {
    if (!tree_) return std::nullopt;
    auto attrs = tree_->get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    for (const auto& [key, value] : *attrs) {
      if (prefixed_only && key.find(':') == std::string::npos) continue;
      if (key.rfind("xmlns", 0) == 0) continue;
      if (local_name(key) == local_name_) return value.data();
    }
    return std::nullopt;
  }

  std::optional<long long> attr_int(std::string_view qname) const {
    auto v = attr(qname);
    return v ? text::parse_int(*v) : std::nullopt;
  }

  std::optional<double> attr_double(std::string_view qname) const {
    auto v = attr(qname);
    return v ? text::parse_double(*v) : std::nullopt;
  }

  // WordprocessingML toggles: present with no val, or val in {1,true,on}.
  bool attr_bool(std::string_view qname, bool absent = false) const {
    auto v = attr(qname);
    if (!v) return absent;
    return *v == "1" || *v == "true" || *v == "on";
  }

  const std::string& text() const {
    static const std::string empty;
    return tree_ ? tree_->data() : empty;
  }

 private:
  void collect(std::string_view local_name_, std::vector<Node>& out) const {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!is_element_key(key)) continue;
      Node n(&child, key);
      if (local_name(key) == local_name_)
        out.push_back(n);
      else
        n.collect(local_name_, out);
    }
  }

  const Tree* tree_ = nullptr;
  std::string_view qname_;
};

class Document {
 public:
  static Document parse(std::string_view bytes, std::string_view what = "xml") {
    if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
        static_cast<unsigned char>(bytes[1]) == 0xBB && static_cast<unsigned char>(bytes[2]) == 0xBF)
      bytes.remove_prefix(3);
    Document doc;
    std::istringstream in{std::string(bytes)};
    try {
      boost::property_tree::read_xml(in, *doc.tree_);
    } catch (const boost::property_tree::xml_parser_error& e) {
      throw Error(ErrorCode::parse_failure, std::string(what) + ": " + e.message() +
                                                " at line " + std::to_string(e.line()));
    }
    return doc;
  }

  Node root() const {
    for (const auto& [key, child] : *tree_)
      if (is_element_key(key)) return {&child, key};
    return {};
  }

 private:
  // Heap-allocated so Nodes stay valid when the Document is moved.
  std::unique_ptr<Tree> tree_ = std::make_unique<Tree>();
};

}  // namespace layoutret::xml
