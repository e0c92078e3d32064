// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "mirror/vision/image.hpp"

namespace mirror::vision {

/// Axis-aligned pixel rectangle; (x, y) is the top-left corner.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  std::int64_t area() const { return static_cast<std::int64_t>(w) * h; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

using FaceBox = Rect;

/// Prefix sums of pixels and squared pixels.
///
/// Stored with a zero row and column in front so every rectangle sum is four
/// lookups without branches; sum_at/squared_sum_at expose the inclusive sums.
class IntegralImage {
 public:
  explicit IntegralImage(const GrayImage& image);

  int width() const { return width_; }
  int height() const { return height_; }

  /// Sum of pixels (i, j) with i <= x and j <= y.
  std::uint64_t sum_at(int x, int y) const { return sums_[index(x + 1, y + 1)]; }
  std::uint64_t squared_sum_at(int x, int y) const { return squared_[index(x + 1, y + 1)]; }

  // Unchecked four-corner sums for the detector's inner loop.
  std::uint64_t sum_unchecked(int x, int y, int w, int h) const {
    return sums_[index(x + w, y + h)] + sums_[index(x, y)] - sums_[index(x + w, y)] -
           sums_[index(x, y + h)];
  }
  std::uint64_t squared_sum_unchecked(int x, int y, int w, int h) const {
    return squared_[index(x + w, y + h)] + squared_[index(x, y)] - squared_[index(x + w, y)] -
           squared_[index(x, y + h)];
  }

 private:
  std::size_t index(int px, int py) const {
    return static_cast<std::size_t>(py) * static_cast<std::size_t>(width_ + 1) +
           static_cast<std::size_t>(px);
  }

  int width_;
  int height_;
  std::vector<std::uint64_t> sums_;
  std::vector<std::uint64_t> squared_;
};

IntegralImage integral_image(const GrayImage& image);

/// Exact pixel sum over `rect`. Throws std::out_of_range when it leaves the image.
std::int64_t rect_sum(const IntegralImage& ii, const Rect& rect);
std::int64_t rect_squared_sum(const IntegralImage& ii, const Rect& rect);

}  // namespace mirror::vision
