// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mirror/vision/cascade.hpp"
#include "mirror/vision/image.hpp"

namespace mirror::vision {

struct DetectionParams {
  double scale_factor = 1.1;
  int min_neighbors = 3;
  int min_width = 48;
  int min_height = 48;
  /// Windows whose normalization std is at or below this are rejected.
  double min_stddev = 1e-9;
  /// Relative side tolerance for grouping raw hits.
  double group_eps = 0.2;
};

/// One scan scale: window size and the step between window origins.
struct ScanScale {
  double factor;
  int window_width;
  int window_height;
  int step;
};

/// Scales visited by the sliding-window scan, smallest window first.
/// Throws std::invalid_argument when scale_factor <= 1.
std::vector<ScanScale> scan_scales(int image_width, int image_height, const Cascade& cascade,
                                   const DetectionParams& params);

/// Every window that passes all stages, in scan order.
std::vector<Rect> detect_raw(const IntegralImage& ii, const Cascade& cascade,
                             const DetectionParams& params);

/// Clusters overlapping hits (each side within eps of the smaller size) and
/// averages each cluster. Clusters with fewer than min_neighbors members are
/// dropped. The result is sorted by (y, x, h, w) and does not depend on the
/// order of `raw`.
std::vector<Rect> group_detections(std::span<const Rect> raw, int min_neighbors, double eps);

std::vector<FaceBox> detect_faces(const GrayImage& image, const Cascade& cascade,
                                  const DetectionParams& params);

/// Maximal area; ties go to the smaller y, then the smaller x.
std::optional<FaceBox> largest_face(std::span<const FaceBox> faces);

}  // namespace mirror::vision
