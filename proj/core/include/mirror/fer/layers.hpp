// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mirror/fer/tensor.hpp"

namespace mirror::fer {

/// Cross-correlation with zero padding. weights: (out, in, kh, kw); bias: (out).
struct Conv2d {
  std::size_t out_channels = 0, in_channels = 0, kernel_h = 0, kernel_w = 0;
  std::size_t stride = 1, padding = 0;
  std::vector<float> weights;
  std::vector<float> bias;
};

/// One kernel per channel. weights: (channels, kh, kw); bias: (channels).
struct DepthwiseConv2d {
  std::size_t channels = 0, kernel_h = 0, kernel_w = 0;
  std::size_t stride = 1, padding = 0;
  std::vector<float> weights;
  std::vector<float> bias;
};

struct Relu {};

struct MaxPool {
  std::size_t size = 2, stride = 2;
};

struct GlobalAvgPool {};

/// Inference-time batch norm: (x - mean) / sqrt(var + eps) * gamma + beta.
struct BatchNorm {
  static constexpr float kEpsilon = 1e-3f;
  std::vector<float> gamma, beta, mean, variance;
};

/// Affine map over the flattened input. weights: (out, in) row-major.
struct Dense {
  std::size_t in_features = 0, out_features = 0;
  std::vector<float> weights;
  std::vector<float> bias;
};

struct Softmax {};

using Layer = std::variant<Conv2d, DepthwiseConv2d, Relu, MaxPool, GlobalAvgPool, BatchNorm,
                           Dense, Softmax>;

/// Tags used by the weights file; values are part of the on-disk format.
enum class LayerKind : std::uint8_t {
  conv2d = 1,
  depthwise_conv2d = 2,
  relu = 3,
  max_pool = 4,
  global_avg_pool = 5,
  batch_norm = 6,
  dense = 7,
  softmax = 8,
};

LayerKind kind_of(const Layer& layer);
std::string_view kind_name(LayerKind kind);

/// Output shape for `input`, or ShapeError describing the mismatch.
Shape output_shape(const Layer& layer, const Shape& input);

/// Applies one layer. Throws ShapeError when x does not fit the layer.
Tensor forward_layer(const Layer& layer, const Tensor& x);

/// Max-subtracted softmax; sums to 1 and never overflows for finite input.
std::vector<float> softmax(std::span<const float> logits);

}  // namespace mirror::fer
