// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/vision/integral.hpp"

#include <stdexcept>
#include <string>

namespace mirror::vision {
namespace {

void check_bounds(const IntegralImage& ii, const Rect& r) {
  if (r.x < 0 || r.y < 0 || r.w < 0 || r.h < 0 ||
      static_cast<std::int64_t>(r.x) + r.w > ii.width() ||
      static_cast<std::int64_t>(r.y) + r.h > ii.height()) {
    throw std::out_of_range("rect (" + std::to_string(r.x) + "," + std::to_string(r.y) + "," +
                            std::to_string(r.w) + "," + std::to_string(r.h) +
                            ") outside " + std::to_string(ii.width()) + "x" +
                            std::to_string(ii.height()) + " image");
  }
}

}  // namespace

IntegralImage::IntegralImage(const GrayImage& image)
    : width_(image.width()),
      height_(image.height()),
      sums_(static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_ + 1), 0),
      squared_(sums_.size(), 0) {
  for (int y = 0; y < height_; ++y) {
    std::uint64_t row = 0;
    std::uint64_t row_sq = 0;
    for (int x = 0; x < width_; ++x) {
      const std::uint64_t v = image.at(x, y);
      row += v;
      row_sq += v * v;
      sums_[index(x + 1, y + 1)] = sums_[index(x + 1, y)] + row;
      squared_[index(x + 1, y + 1)] = squared_[index(x + 1, y)] + row_sq;
    }
  }
}

IntegralImage integral_image(const GrayImage& image) { return IntegralImage(image); }

std::int64_t rect_sum(const IntegralImage& ii, const Rect& rect) {
  check_bounds(ii, rect);
  if (rect.w == 0 || rect.h == 0) return 0;
  return static_cast<std::int64_t>(ii.sum_unchecked(rect.x, rect.y, rect.w, rect.h));
}

std::int64_t rect_squared_sum(const IntegralImage& ii, const Rect& rect) {
  check_bounds(ii, rect);
  if (rect.w == 0 || rect.h == 0) return 0;
  return static_cast<std::int64_t>(ii.squared_sum_unchecked(rect.x, rect.y, rect.w, rect.h));
}

}  // namespace mirror::vision
