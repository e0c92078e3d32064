// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "mirror/error.hpp"
#include "mirror/vision/cascade.hpp"

namespace mirror::vision {
namespace {

namespace pt = boost::property_tree;

template <class T>
std::vector<T> numbers(const std::string& text, const char* what) {
  std::istringstream in(text);
  std::vector<T> out;
  T v{};
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw LoadError(std::string("cascade xml: malformed ") + what);
  return out;
}

const pt::ptree& child(const pt::ptree& node, const char* path) {
  auto found = node.get_child_optional(path);
  if (!found) throw LoadError(std::string("cascade xml: missing <") + path + ">");
  return *found;
}

std::vector<WeightedRect> read_feature(const pt::ptree& node) {
  if (node.get<int>("tilted", 0) != 0) {
    throw LoadError("cascade xml: tilted features are not supported");
  }
  std::vector<WeightedRect> rects;
  for (const auto& [key, r] : child(node, "rects")) {
    if (key != "_") continue;
    const auto v = numbers<double>(r.data(), "rectangle");
    if (v.size() != 5) throw LoadError("cascade xml: rectangle needs 5 numbers");
    rects.push_back({{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                      static_cast<int>(v[3])},
                     static_cast<float>(v[4])});
  }
  return rects;
}

Cascade build_cascade(const pt::ptree& doc);

}  // namespace

Cascade import_cascade_xml(std::string_view xml_text) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml_text)};
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw LoadError(std::string("cascade xml: ") + e.what());
  }

  try {
    return build_cascade(doc);
  } catch (const pt::ptree_error& e) {
    throw LoadError(std::string("cascade xml: ") + e.what());
  }
}

namespace {

Cascade build_cascade(const pt::ptree& doc) {
  auto root = doc.get_child_optional("opencv_storage");
  if (!root) throw LoadError("cascade xml: missing <opencv_storage>");
  auto cascade_node = root->get_child_optional("cascade");
  if (!cascade_node) {
    throw LoadError("cascade xml: only the <cascade> layout is supported (legacy layout found)");
  }
  const auto& c = *cascade_node;
  if (c.get<std::string>("stageType", "") != "BOOST" ||
      c.get<std::string>("featureType", "") != "HAAR") {
    throw LoadError("cascade xml: expected BOOST stages over HAAR features");
  }
  const int width = c.get<int>("width", 0);
  const int height = c.get<int>("height", 0);

  std::vector<std::vector<WeightedRect>> features;
  for (const auto& [key, f] : child(c, "features")) {
    if (key == "_") features.push_back(read_feature(f));
  }

  std::vector<CascadeStage> stages;
  for (const auto& [key, s] : child(c, "stages")) {
    if (key != "_") continue;
    CascadeStage stage;
    stage.threshold = s.get<float>("stageThreshold");
    for (const auto& [wkey, w] : child(s, "weakClassifiers")) {
      if (wkey != "_") continue;
      const auto nodes = numbers<double>(child(w, "internalNodes").data(), "internalNodes");
      const auto leaves = numbers<double>(child(w, "leafValues").data(), "leafValues");
      // A stump is "0 -1 feature threshold" with two leaves.
      if (nodes.size() != 4 || nodes[0] != 0 || nodes[1] != -1 || leaves.size() != 2) {
        throw LoadError("cascade xml: only single-split stumps are supported");
      }
      const auto feature_index = static_cast<std::size_t>(nodes[2]);
      if (nodes[2] < 0 || feature_index >= features.size()) {
        throw LoadError("cascade xml: feature index out of range");
      }
      stage.weak_classifiers.push_back({features[feature_index], static_cast<float>(nodes[3]),
                                        static_cast<float>(leaves[0]),
                                        static_cast<float>(leaves[1])});
    }
    stages.push_back(std::move(stage));
  }
  return {width, height, std::move(stages)};
}

}  // namespace
}  // namespace mirror::vision
