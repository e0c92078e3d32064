// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/fer/network.hpp"

#include <string>

#include "../common/binary_io.hpp"
#include "mirror/error.hpp"

namespace mirror::fer {
namespace {

constexpr std::string_view kMagic = "FERW";
constexpr std::uint32_t kVersion = 1;
// Guards against absurd allocations from corrupt headers.
constexpr std::uint64_t kMaxTensorElements = 1ull << 26;

struct ParamTensor {
  Shape dims;
  std::vector<float> values;
};

ParamTensor read_param(detail::ByteReader& in) {
  ParamTensor t;
  const std::uint32_t rank = in.u32();
  if (rank == 0 || rank > 4) throw LoadError(in.context() + ": parameter rank " +
                                             std::to_string(rank) + " unsupported");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < rank; ++i) {
    t.dims.push_back(in.u32());
    count *= t.dims.back();
    if (count > kMaxTensorElements) throw LoadError(in.context() + ": parameter too large");
  }
  if (count * 4 > in.remaining()) throw LoadError(in.context() + ": unexpected end of stream");
  t.values.resize(count);
  for (auto& v : t.values) v = in.f32();
  return t;
}

void expect_counts(std::size_t layer, LayerKind kind, std::size_t hyper, std::size_t want_hyper,
                   std::size_t tensors, std::size_t want_tensors) {
  if (hyper != want_hyper || tensors != want_tensors) {
    throw LoadError("weights: layer " + std::to_string(layer) + " (" +
                    std::string(kind_name(kind)) + ") expects " + std::to_string(want_hyper) +
                    " hyperparameters and " + std::to_string(want_tensors) +
                    " tensors, file has " + std::to_string(hyper) + " and " +
                    std::to_string(tensors));
  }
}

[[noreturn]] void bad_dims(std::size_t layer, LayerKind kind, const std::string& what) {
  throw ShapeError("layer " + std::to_string(layer) + " (" + std::string(kind_name(kind)) +
                   "): " + what);
}

Layer read_layer(detail::ByteReader& in, std::size_t index) {
  const auto tag = in.u8();
  if (tag < 1 || tag > 8) {
    throw LoadError("weights: layer " + std::to_string(index) + " has unknown kind tag " +
                    std::to_string(tag));
  }
  const auto kind = static_cast<LayerKind>(tag);
  std::vector<std::uint32_t> hyper(in.u32());
  if (hyper.size() > 16) throw LoadError("weights: too many hyperparameters");
  for (auto& h : hyper) h = in.u32();
  const std::uint32_t tensor_count = in.u32();
  if (tensor_count > 8) throw LoadError("weights: too many parameter tensors");
  std::vector<ParamTensor> params;
  for (std::uint32_t i = 0; i < tensor_count; ++i) params.push_back(read_param(in));

  switch (kind) {
    case LayerKind::conv2d: {
      expect_counts(index, kind, hyper.size(), 2, params.size(), 2);
      const auto& w = params[0].dims;
      if (w.size() != 4) bad_dims(index, kind, "weights must be rank 4 (out,in,kh,kw)");
      if (params[1].dims != Shape{w[0]}) bad_dims(index, kind, "bias must be (out)");
      return Conv2d{w[0], w[1], w[2], w[3], hyper[0], hyper[1], std::move(params[0].values),
                    std::move(params[1].values)};
    }
    case LayerKind::depthwise_conv2d: {
      expect_counts(index, kind, hyper.size(), 2, params.size(), 2);
      const auto& w = params[0].dims;
      if (w.size() != 3) bad_dims(index, kind, "weights must be rank 3 (c,kh,kw)");
      if (params[1].dims != Shape{w[0]}) bad_dims(index, kind, "bias must be (c)");
      return DepthwiseConv2d{w[0], w[1], w[2], hyper[0], hyper[1], std::move(params[0].values),
                             std::move(params[1].values)};
    }
    case LayerKind::relu:
      expect_counts(index, kind, hyper.size(), 0, params.size(), 0);
      return Relu{};
    case LayerKind::max_pool:
      expect_counts(index, kind, hyper.size(), 2, params.size(), 0);
      return MaxPool{hyper[0], hyper[1]};
    case LayerKind::global_avg_pool:
      expect_counts(index, kind, hyper.size(), 0, params.size(), 0);
      return GlobalAvgPool{};
    case LayerKind::batch_norm: {
      expect_counts(index, kind, hyper.size(), 0, params.size(), 4);
      for (const auto& p : params) {
        if (p.dims.size() != 1) bad_dims(index, kind, "parameters must be rank 1");
      }
      return BatchNorm{std::move(params[0].values), std::move(params[1].values),
                       std::move(params[2].values), std::move(params[3].values)};
    }
    case LayerKind::dense: {
      expect_counts(index, kind, hyper.size(), 0, params.size(), 2);
      const auto& w = params[0].dims;
      if (w.size() != 2) bad_dims(index, kind, "weights must be rank 2 (out,in)");
      if (params[1].dims != Shape{w[0]}) bad_dims(index, kind, "bias must be (out)");
      return Dense{w[1], w[0], std::move(params[0].values), std::move(params[1].values)};
    }
    case LayerKind::softmax:
      expect_counts(index, kind, hyper.size(), 0, params.size(), 0);
      return Softmax{};
  }
  throw LoadError("weights: unreachable layer kind");
}

void write_param(detail::ByteWriter& out, const Shape& dims, const std::vector<float>& values) {
  out.u32(static_cast<std::uint32_t>(dims.size()));
  for (auto d : dims) out.u32(static_cast<std::uint32_t>(d));
  for (float v : values) out.f32(v);
}

void write_layer(detail::ByteWriter& out, const Layer& layer) {
  out.u8(static_cast<std::uint8_t>(kind_of(layer)));
  auto hyper = [&](std::initializer_list<std::size_t> values) {
    out.u32(static_cast<std::uint32_t>(values.size()));
    for (auto v : values) out.u32(static_cast<std::uint32_t>(v));
  };
  if (const auto* l = std::get_if<Conv2d>(&layer)) {
    hyper({l->stride, l->padding});
    out.u32(2);
    write_param(out, {l->out_channels, l->in_channels, l->kernel_h, l->kernel_w}, l->weights);
    write_param(out, {l->out_channels}, l->bias);
  } else if (const auto* l = std::get_if<DepthwiseConv2d>(&layer)) {
    hyper({l->stride, l->padding});
    out.u32(2);
    write_param(out, {l->channels, l->kernel_h, l->kernel_w}, l->weights);
    write_param(out, {l->channels}, l->bias);
  } else if (const auto* l = std::get_if<MaxPool>(&layer)) {
    hyper({l->size, l->stride});
    out.u32(0);
  } else if (const auto* l = std::get_if<BatchNorm>(&layer)) {
    hyper({});
    out.u32(4);
    for (const auto* p : {&l->gamma, &l->beta, &l->mean, &l->variance}) {
      write_param(out, {p->size()}, *p);
    }
  } else if (const auto* l = std::get_if<Dense>(&layer)) {
    hyper({});
    out.u32(2);
    write_param(out, {l->out_features, l->in_features}, l->weights);
    write_param(out, {l->out_features}, l->bias);
  } else {
    hyper({});
    out.u32(0);
  }
}

}  // namespace

Network::Network(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ShapeError("network has no layers");
  Shape shape = kFaceInputShape;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    try {
      shape = output_shape(layers_[i], shape);
    } catch (const ShapeError& e) {
      throw ShapeError("layer " + std::to_string(i) + " " + e.what());
    }
  }
  if (!std::holds_alternative<Softmax>(layers_.back()) ||
      shape != Shape{affect::kCategoryCount}) {
    throw ShapeError("network must end in a 7-way softmax, final shape is " +
                     shape_string(shape));
  }
}

Tensor Network::forward(const Tensor& input) const {
  if (input.shape() != kFaceInputShape) {
    throw ShapeError("network input must be " + shape_string(kFaceInputShape) + ", got " +
                     shape_string(input.shape()));
  }
  Tensor x = input;
  for (const auto& layer : layers_) x = forward_layer(layer, x);
  return x;
}

Network load_weights(std::span<const std::byte> bytes) {
  detail::ByteReader in(bytes, "weights");
  in.expect_magic(kMagic);
  const auto version = in.u32();
  if (version != kVersion) {
    throw LoadError("weights: unsupported version " + std::to_string(version));
  }
  const auto count = in.u32();
  if (count == 0 || count > 256) {
    throw LoadError("weights: implausible layer count " + std::to_string(count));
  }
  std::vector<Layer> layers;
  for (std::uint32_t i = 0; i < count; ++i) layers.push_back(read_layer(in, i));
  if (!in.at_end()) throw LoadError("weights: trailing bytes after last layer");
  return Network(std::move(layers));
}

Network load_weights_file(const std::filesystem::path& path) {
  return load_weights(detail::read_file_bytes(path, "weights"));
}

std::vector<std::byte> save_weights(const Network& net) {
  detail::ByteWriter out;
  out.magic(kMagic);
  out.u32(kVersion);
  out.u32(static_cast<std::uint32_t>(net.layers().size()));
  for (const auto& layer : net.layers()) write_layer(out, layer);
  return out.take();
}

affect::EmotionProbabilities infer_probs(const Network& net, const Tensor& face) {
  const Tensor out = net.forward(face);
  std::array<double, affect::kCategoryCount> p{};
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = out.data()[i];
  // float softmax output; renormalize in double so the sum tolerance holds exactly
  return affect::EmotionProbabilities::normalized(p);
}

}  // namespace mirror::fer
