// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/vision/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mirror::vision {
namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Half-pixel-centre sampling, clamped at the crop edges.
std::vector<Tap> taps(int src, int dst) {
  std::vector<Tap> out(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double s = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
    const int lo = static_cast<int>(std::floor(s));
    out[static_cast<std::size_t>(i)] = {lo, std::min(lo + 1, src - 1), s - lo};
  }
  return out;
}

}  // namespace

fer::Tensor preprocess_face(const GrayImage& image, const FaceBox& box) {
  if (box.w <= 0 || box.h <= 0) throw std::invalid_argument("face box is empty");
  if (box.x < 0 || box.y < 0 || box.x + box.w > image.width() ||
      box.y + box.h > image.height()) {
    throw std::out_of_range("face box outside the " + std::to_string(image.width()) + "x" +
                            std::to_string(image.height()) + " frame");
  }
  const auto xs = taps(box.w, kFaceSize);
  const auto ys = taps(box.h, kFaceSize);
  fer::Tensor out({1, kFaceSize, kFaceSize});
  auto px = [&](int x, int y) { return static_cast<double>(image.at(box.x + x, box.y + y)); };
  for (int oy = 0; oy < kFaceSize; ++oy) {
    const auto& ty = ys[static_cast<std::size_t>(oy)];
    for (int ox = 0; ox < kFaceSize; ++ox) {
      const auto& tx = xs[static_cast<std::size_t>(ox)];
      // lerp form keeps constant regions exactly constant
      const double top = px(tx.lo, ty.lo) + (px(tx.hi, ty.lo) - px(tx.lo, ty.lo)) * tx.frac;
      const double bottom = px(tx.lo, ty.hi) + (px(tx.hi, ty.hi) - px(tx.lo, ty.hi)) * tx.frac;
      const double v = top + (bottom - top) * ty.frac;
      out.at(0, static_cast<std::size_t>(oy), static_cast<std::size_t>(ox)) =
          static_cast<float>((v / 255.0 - 0.5) * 2.0);
    }
  }
  return out;
}

}  // namespace mirror::vision
