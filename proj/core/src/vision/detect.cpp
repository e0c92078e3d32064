// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/vision/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace mirror::vision {
namespace {

struct ScaledRect {
  int x, y, w, h;
  float weight;
};

struct ScaledWeak {
  std::array<ScaledRect, 3> rects;
  int rect_count;
  float threshold;
  float left;
  float right;
};

struct ScaledStage {
  float threshold;
  std::vector<ScaledWeak> weak;
};

/// Cascade geometry resampled for one window size.
struct ScaledCascade {
  Rect norm;  // variance window, inset one base pixel from each edge
  double inv_norm_area;
  std::vector<ScaledStage> stages;
};

int scaled(int v, double factor) { return static_cast<int>(std::lround(v * factor)); }

ScaledCascade scale_cascade(const Cascade& cascade, const ScanScale& s) {
  ScaledCascade out;
  const int bw = cascade.base_width(), bh = cascade.base_height();
  if (bw > 2 && bh > 2) {
    out.norm = {scaled(1, s.factor), scaled(1, s.factor), scaled(bw - 2, s.factor),
                scaled(bh - 2, s.factor)};
  } else {
    out.norm = {0, 0, s.window_width, s.window_height};
  }
  out.norm.w = std::clamp(out.norm.w, 1, s.window_width - out.norm.x);
  out.norm.h = std::clamp(out.norm.h, 1, s.window_height - out.norm.y);
  out.inv_norm_area = 1.0 / static_cast<double>(out.norm.area());

  for (const auto& stage : cascade.stages()) {
    ScaledStage ss{stage.threshold, {}};
    ss.weak.reserve(stage.weak_classifiers.size());
    for (const auto& weak : stage.weak_classifiers) {
      ScaledWeak sw{};
      sw.rect_count = static_cast<int>(weak.feature.size());
      sw.threshold = weak.node_threshold;
      sw.left = weak.left_value;
      sw.right = weak.right_value;
      double base_balance = 0.0, base_magnitude = 0.0;
      for (int i = 0; i < sw.rect_count; ++i) {
        const auto& wr = weak.feature[static_cast<std::size_t>(i)];
        auto& r = sw.rects[static_cast<std::size_t>(i)];
        r.x = std::min(scaled(wr.rect.x, s.factor), s.window_width - 1);
        r.y = std::min(scaled(wr.rect.y, s.factor), s.window_height - 1);
        r.w = std::clamp(scaled(wr.rect.w, s.factor), 1, s.window_width - r.x);
        r.h = std::clamp(scaled(wr.rect.h, s.factor), 1, s.window_height - r.y);
        r.weight = wr.weight;
        base_balance += wr.weight * static_cast<double>(wr.rect.area());
        base_magnitude += std::abs(wr.weight * static_cast<double>(wr.rect.area()));
      }
      // Zero-sum features stay zero-sum after rounding: re-derive the first weight.
      if (std::abs(base_balance) <= 1e-6 * base_magnitude) {
        double rest = 0.0;
        for (int i = 1; i < sw.rect_count; ++i) {
          const auto& r = sw.rects[static_cast<std::size_t>(i)];
          rest += r.weight * static_cast<double>(r.w) * r.h;
        }
        const auto& r0 = sw.rects[0];
        sw.rects[0].weight = static_cast<float>(-rest / (static_cast<double>(r0.w) * r0.h));
      }
      ss.weak.push_back(sw);
    }
    out.stages.push_back(std::move(ss));
  }
  return out;
}

bool window_passes(const IntegralImage& ii, const ScaledCascade& sc, int wx, int wy,
                   double min_stddev) {
  const double sum = static_cast<double>(
      ii.sum_unchecked(wx + sc.norm.x, wy + sc.norm.y, sc.norm.w, sc.norm.h));
  const double sq = static_cast<double>(
      ii.squared_sum_unchecked(wx + sc.norm.x, wy + sc.norm.y, sc.norm.w, sc.norm.h));
  const double mean = sum * sc.inv_norm_area;
  const double variance = sq * sc.inv_norm_area - mean * mean;
  const double stddev = variance > 0.0 ? std::sqrt(variance) : 0.0;
  if (stddev <= min_stddev) return false;
  // Feature sums are compared against thresholds expressed per unit area and std.
  const double norm = sc.inv_norm_area / stddev;

  for (const auto& stage : sc.stages) {
    double stage_sum = 0.0;
    for (const auto& weak : stage.weak) {
      double value = 0.0;
      for (int i = 0; i < weak.rect_count; ++i) {
        const auto& r = weak.rects[static_cast<std::size_t>(i)];
        value += r.weight * static_cast<double>(ii.sum_unchecked(wx + r.x, wy + r.y, r.w, r.h));
      }
      stage_sum += value * norm < weak.threshold ? weak.left : weak.right;
    }
    if (stage_sum < stage.threshold) return false;
  }
  return true;
}

// Disjoint-set forest for clustering.
class Partition {
 public:
  explicit Partition(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool similar(const Rect& a, const Rect& b, double eps) {
  const double delta = eps * (std::min(a.w, b.w) + std::min(a.h, b.h)) * 0.5;
  return std::abs(a.x - b.x) <= delta && std::abs(a.y - b.y) <= delta &&
         std::abs(a.x + a.w - b.x - b.w) <= delta && std::abs(a.y + a.h - b.y - b.h) <= delta;
}

}  // namespace

std::vector<ScanScale> scan_scales(int image_width, int image_height, const Cascade& cascade,
                                   const DetectionParams& params) {
  if (!(params.scale_factor > 1.0)) throw std::invalid_argument("scale_factor must be > 1");
  std::vector<ScanScale> scales;
  for (double factor = 1.0;; factor *= params.scale_factor) {
    const int w = scaled(cascade.base_width(), factor);
    const int h = scaled(cascade.base_height(), factor);
    if (w > image_width || h > image_height) break;
    if (w < params.min_width || h < params.min_height) continue;
    scales.push_back({factor, w, h, std::max(1, static_cast<int>(std::lround(factor)))});
  }
  return scales;
}

std::vector<Rect> detect_raw(const IntegralImage& ii, const Cascade& cascade,
                             const DetectionParams& params) {
  std::vector<Rect> hits;
  for (const auto& s : scan_scales(ii.width(), ii.height(), cascade, params)) {
    const ScaledCascade sc = scale_cascade(cascade, s);
    for (int y = 0; y + s.window_height <= ii.height(); y += s.step) {
      for (int x = 0; x + s.window_width <= ii.width(); x += s.step) {
        if (window_passes(ii, sc, x, y, params.min_stddev)) {
          hits.push_back({x, y, s.window_width, s.window_height});
        }
      }
    }
  }
  return hits;
}

std::vector<Rect> group_detections(std::span<const Rect> raw, int min_neighbors, double eps) {
  Partition groups(raw.size());
  // Sweep in x order: a pair can only be similar when their x differ by at
  // most the largest possible delta. Clusters are the transitive closure of
  // the pairwise relation, so the visiting order does not change them.
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(raw[a].x, raw[a].y, raw[a].w, raw[a].h, a) <
           std::tie(raw[b].x, raw[b].y, raw[b].w, raw[b].h, b);
  });
  double max_delta = 0.0;
  for (const auto& r : raw) max_delta = std::max(max_delta, eps * (r.w + r.h) * 0.5);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Rect& a = raw[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Rect& b = raw[order[j]];
      if (b.x - a.x > max_delta) break;
      if (similar(a, b, eps)) groups.unite(order[i], order[j]);
    }
  }
  struct Accum {
    std::int64_t x = 0, y = 0, w = 0, h = 0, n = 0;
  };
  std::vector<Accum> acc(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& a = acc[groups.find(i)];
    a.x += raw[i].x;
    a.y += raw[i].y;
    a.w += raw[i].w;
    a.h += raw[i].h;
    ++a.n;
  }
  auto mean = [](std::int64_t total, std::int64_t n) {
    return static_cast<int>(std::lround(static_cast<double>(total) / static_cast<double>(n)));
  };
  std::vector<Rect> out;
  for (const auto& a : acc) {
    if (a.n == 0 || a.n < min_neighbors) continue;
    out.push_back({mean(a.x, a.n), mean(a.y, a.n), mean(a.w, a.n), mean(a.h, a.n)});
  }
  std::sort(out.begin(), out.end(), [](const Rect& a, const Rect& b) {
    return std::tie(a.y, a.x, a.h, a.w) < std::tie(b.y, b.x, b.h, b.w);
  });
  return out;
}

std::vector<FaceBox> detect_faces(const GrayImage& image, const Cascade& cascade,
                                  const DetectionParams& params) {
  const IntegralImage ii(image);
  const auto raw = detect_raw(ii, cascade, params);
  return group_detections(raw, params.min_neighbors, params.group_eps);
}

std::optional<FaceBox> largest_face(std::span<const FaceBox> faces) {
  std::optional<FaceBox> best;
  for (const auto& f : faces) {
    if (!best || f.area() > best->area() ||
        (f.area() == best->area() && std::tie(f.y, f.x) < std::tie(best->y, best->x))) {
      best = f;
    }
  }
  return best;
}

}  // namespace mirror::vision
