// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/fer/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mirror/error.hpp"

namespace mirror::fer {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void mismatch(LayerKind kind, const std::string& what) {
  throw ShapeError(std::string(kind_name(kind)) + ": " + what);
}

void require_chw(LayerKind kind, const Shape& in) {
  if (in.size() != 3) mismatch(kind, "expects a (c,h,w) input, got " + shape_string(in));
}

std::size_t conv_extent(LayerKind kind, std::size_t in, std::size_t k, std::size_t stride,
                        std::size_t pad) {
  if (stride == 0) mismatch(kind, "stride must be positive");
  if (k == 0 || in + 2 * pad < k) mismatch(kind, "kernel larger than padded input");
  return (in + 2 * pad - k) / stride + 1;
}

Tensor conv(const Tensor& x, std::size_t out_c, std::size_t kh, std::size_t kw,
            std::size_t stride, std::size_t pad, const std::vector<float>& weights,
            const std::vector<float>& bias, bool depthwise) {
  const std::size_t in_c = x.shape()[0], in_h = x.shape()[1], in_w = x.shape()[2];
  const std::size_t oh = (in_h + 2 * pad - kh) / stride + 1;
  const std::size_t ow = (in_w + 2 * pad - kw) / stride + 1;
  Tensor y({out_c, oh, ow});
  const auto ih = static_cast<std::ptrdiff_t>(in_h);
  const auto iw = static_cast<std::ptrdiff_t>(in_w);
  for (std::size_t o = 0; o < out_c; ++o) {
    const std::size_t c_begin = depthwise ? o : 0;
    const std::size_t c_end = depthwise ? o + 1 : in_c;
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        float acc = bias[o];
        for (std::size_t c = c_begin; c < c_end; ++c) {
          const float* k = depthwise ? &weights[o * kh * kw]
                                     : &weights[((o * in_c) + c) * kh * kw];
          for (std::size_t ky = 0; ky < kh; ++ky) {
            const auto sy = static_cast<std::ptrdiff_t>(oy * stride + ky) -
                            static_cast<std::ptrdiff_t>(pad);
            if (sy < 0 || sy >= ih) continue;
            for (std::size_t kx = 0; kx < kw; ++kx) {
              const auto sx = static_cast<std::ptrdiff_t>(ox * stride + kx) -
                              static_cast<std::ptrdiff_t>(pad);
              if (sx < 0 || sx >= iw) continue;
              acc += k[ky * kw + kx] *
                     x.at(c, static_cast<std::size_t>(sy), static_cast<std::size_t>(sx));
            }
          }
        }
        y.at(o, oy, ox) = acc;
      }
    }
  }
  return y;
}

}  // namespace

LayerKind kind_of(const Layer& layer) {
  return std::visit(overloaded{
                        [](const Conv2d&) { return LayerKind::conv2d; },
                        [](const DepthwiseConv2d&) { return LayerKind::depthwise_conv2d; },
                        [](const Relu&) { return LayerKind::relu; },
                        [](const MaxPool&) { return LayerKind::max_pool; },
                        [](const GlobalAvgPool&) { return LayerKind::global_avg_pool; },
                        [](const BatchNorm&) { return LayerKind::batch_norm; },
                        [](const Dense&) { return LayerKind::dense; },
                        [](const Softmax&) { return LayerKind::softmax; },
                    },
                    layer);
}

std::string_view kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::conv2d: return "conv2d";
    case LayerKind::depthwise_conv2d: return "depthwise_conv2d";
    case LayerKind::relu: return "relu";
    case LayerKind::max_pool: return "max_pool";
    case LayerKind::global_avg_pool: return "global_avg_pool";
    case LayerKind::batch_norm: return "batch_norm";
    case LayerKind::dense: return "dense";
    case LayerKind::softmax: return "softmax";
  }
  return "unknown";
}

Shape output_shape(const Layer& layer, const Shape& in) {
  const LayerKind kind = kind_of(layer);
  return std::visit(
      overloaded{
          [&](const Conv2d& l) -> Shape {
            require_chw(kind, in);
            if (l.in_channels != in[0]) {
              mismatch(kind, "kernel declares " + std::to_string(l.in_channels) +
                                 " input channels, input has " + std::to_string(in[0]));
            }
            if (l.weights.size() != l.out_channels * l.in_channels * l.kernel_h * l.kernel_w ||
                l.bias.size() != l.out_channels) {
              mismatch(kind, "parameter sizes do not match the declared kernel");
            }
            return {l.out_channels, conv_extent(kind, in[1], l.kernel_h, l.stride, l.padding),
                    conv_extent(kind, in[2], l.kernel_w, l.stride, l.padding)};
          },
          [&](const DepthwiseConv2d& l) -> Shape {
            require_chw(kind, in);
            if (l.channels != in[0]) {
              mismatch(kind, "kernel declares " + std::to_string(l.channels) +
                                 " channels, input has " + std::to_string(in[0]));
            }
            if (l.weights.size() != l.channels * l.kernel_h * l.kernel_w ||
                l.bias.size() != l.channels) {
              mismatch(kind, "parameter sizes do not match the declared kernel");
            }
            return {l.channels, conv_extent(kind, in[1], l.kernel_h, l.stride, l.padding),
                    conv_extent(kind, in[2], l.kernel_w, l.stride, l.padding)};
          },
          [&](const Relu&) -> Shape { return in; },
          [&](const MaxPool& l) -> Shape {
            require_chw(kind, in);
            return {in[0], conv_extent(kind, in[1], l.size, l.stride, 0),
                    conv_extent(kind, in[2], l.size, l.stride, 0)};
          },
          [&](const GlobalAvgPool&) -> Shape {
            require_chw(kind, in);
            return {in[0]};
          },
          [&](const BatchNorm& l) -> Shape {
            if (in.empty()) mismatch(kind, "empty input");
            const std::size_t c = in[0];
            if (l.gamma.size() != c || l.beta.size() != c || l.mean.size() != c ||
                l.variance.size() != c) {
              mismatch(kind, "parameters sized for " + std::to_string(l.gamma.size()) +
                                 " channels, input has " + std::to_string(c));
            }
            return in;
          },
          [&](const Dense& l) -> Shape {
            if (l.in_features != element_count(in)) {
              mismatch(kind, "expects " + std::to_string(l.in_features) + " features, input " +
                                 shape_string(in) + " has " + std::to_string(element_count(in)));
            }
            if (l.weights.size() != l.in_features * l.out_features ||
                l.bias.size() != l.out_features) {
              mismatch(kind, "parameter sizes do not match the declared features");
            }
            return {l.out_features};
          },
          [&](const Softmax&) -> Shape {
            if (in.size() != 1) mismatch(kind, "expects a flat input, got " + shape_string(in));
            return in;
          },
      },
      layer);
}

Tensor forward_layer(const Layer& layer, const Tensor& x) {
  const Shape out_shape = output_shape(layer, x.shape());
  return std::visit(
      overloaded{
          [&](const Conv2d& l) {
            return conv(x, l.out_channels, l.kernel_h, l.kernel_w, l.stride, l.padding,
                        l.weights, l.bias, false);
          },
          [&](const DepthwiseConv2d& l) {
            return conv(x, l.channels, l.kernel_h, l.kernel_w, l.stride, l.padding, l.weights,
                        l.bias, true);
          },
          [&](const Relu&) {
            Tensor y = x;
            for (float& v : y.data()) v = std::max(v, 0.0f);
            return y;
          },
          [&](const MaxPool& l) {
            Tensor y(out_shape);
            for (std::size_t c = 0; c < out_shape[0]; ++c)
              for (std::size_t oy = 0; oy < out_shape[1]; ++oy)
                for (std::size_t ox = 0; ox < out_shape[2]; ++ox) {
                  float best = -std::numeric_limits<float>::infinity();
                  for (std::size_t ky = 0; ky < l.size; ++ky)
                    for (std::size_t kx = 0; kx < l.size; ++kx)
                      best = std::max(best, x.at(c, oy * l.stride + ky, ox * l.stride + kx));
                  y.at(c, oy, ox) = best;
                }
            return y;
          },
          [&](const GlobalAvgPool&) {
            const std::size_t plane = x.shape()[1] * x.shape()[2];
            Tensor y(out_shape);
            auto in = x.data();
            for (std::size_t c = 0; c < out_shape[0]; ++c) {
              double sum = 0.0;
              for (std::size_t i = 0; i < plane; ++i) sum += in[c * plane + i];
              y.data()[c] = static_cast<float>(sum / static_cast<double>(plane));
            }
            return y;
          },
          [&](const BatchNorm& l) {
            Tensor y = x;
            const std::size_t c_count = x.shape()[0];
            const std::size_t per_channel = x.size() / c_count;
            auto data = y.data();
            for (std::size_t c = 0; c < c_count; ++c) {
              const float scale = l.gamma[c] / std::sqrt(l.variance[c] + BatchNorm::kEpsilon);
              for (std::size_t i = 0; i < per_channel; ++i) {
                float& v = data[c * per_channel + i];
                v = (v - l.mean[c]) * scale + l.beta[c];
              }
            }
            return y;
          },
          [&](const Dense& l) {
            Tensor y(out_shape);
            auto in = x.data();
            for (std::size_t o = 0; o < l.out_features; ++o) {
              const float* row = &l.weights[o * l.in_features];
              float acc = l.bias[o];
              for (std::size_t i = 0; i < l.in_features; ++i) acc += row[i] * in[i];
              y.data()[o] = acc;
            }
            return y;
          },
          [&](const Softmax&) { return Tensor(out_shape, softmax(x.data())); },
      },
      layer);
}

std::vector<float> softmax(std::span<const float> logits) {
  std::vector<float> out(logits.size());
  if (logits.empty()) return out;
  const float peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  std::vector<double> e(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    e[i] = std::exp(static_cast<double>(logits[i]) - peak);
    sum += e[i];
  }
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = static_cast<float>(e[i] / sum);
  return out;
}

}  // namespace mirror::fer
