// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "mirror/vision/integral.hpp"

namespace mirror::vision {

struct WeightedRect {
  Rect rect;
  float weight = 0.0f;
};

/// Decision stump over a Haar-like feature of 2 or 3 weighted rectangles.
/// Yields left_value when the normalized feature is below node_threshold.
struct WeakClassifier {
  std::vector<WeightedRect> feature;
  float node_threshold = 0.0f;
  float left_value = 0.0f;
  float right_value = 0.0f;
};

struct CascadeStage {
  float threshold = 0.0f;
  std::vector<WeakClassifier> weak_classifiers;
};

/// A boosted cascade of stump stages over a fixed base window.
class Cascade {
 public:
  /// Validates everything detection relies on; throws LoadError otherwise.
  Cascade(int base_width, int base_height, std::vector<CascadeStage> stages);

  int base_width() const { return base_width_; }
  int base_height() const { return base_height_; }
  const std::vector<CascadeStage>& stages() const { return stages_; }
  std::size_t weak_count() const;

 private:
  int base_width_;
  int base_height_;
  std::vector<CascadeStage> stages_;
};

/// Native "HCAS" binary format (docs/formats.md).
Cascade parse_cascade_binary(std::span<const std::byte> bytes);
std::vector<std::byte> serialize_cascade_binary(const Cascade& cascade);

/// Importer for the XML cascade layout written by opencv_traincascade
/// (BOOST stages, HAAR features, stumps only, no tilted features).
Cascade import_cascade_xml(std::string_view xml_text);

/// Loads either format, dispatching on the leading bytes.
Cascade load_cascade(const std::filesystem::path& path);

/// A single stage that accepts every window with non-zero variance.
Cascade always_pass_cascade(int base_width, int base_height);

}  // namespace mirror::vision
