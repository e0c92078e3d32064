// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "mirror/error.hpp"
#include "mirror/fer/classifier.hpp"
#include "mirror/fer/network.hpp"
#include "mirror/fer/reference.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace mirror::fer {
namespace {

using test::close_relative;
using test::random_floats;
using test::to_volume;

Tensor random_tensor(Rng& rng, Shape shape) {
  const auto n = element_count(shape);
  return Tensor(std::move(shape), random_floats(rng, n));
}

TEST(Tensor, ValidatesData) {
  EXPECT_THROW(Tensor({2, 2}, std::vector<float>(3)), ShapeError);
  EXPECT_THROW(Tensor({1}, std::vector<float>{NAN}), ShapeError);
  EXPECT_EQ(Tensor({2, 3, 4}).size(), 24u);
}

TEST(Conv2d, MatchesDirectSummation) {
  Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    Conv2d l;
    l.in_channels = 1 + uniform_index(rng, 3);
    l.out_channels = 1 + uniform_index(rng, 4);
    l.kernel_h = 1 + uniform_index(rng, 3);
    l.kernel_w = 1 + uniform_index(rng, 3);
    l.stride = 1 + uniform_index(rng, 2);
    l.padding = uniform_index(rng, 2);
    l.weights = random_floats(rng, l.out_channels * l.in_channels * l.kernel_h * l.kernel_w);
    l.bias = random_floats(rng, l.out_channels);
    const auto x = random_tensor(rng, {l.in_channels, 5 + uniform_index(rng, 6), 5 + uniform_index(rng, 6)});
    std::size_t oh = 0, ow = 0;
    const auto expected = test::oracle_conv(to_volume(x), l, oh, ow);
    const auto y = forward_layer(l, x);
    EXPECT_EQ(y.shape(), (Shape{l.out_channels, oh, ow}));
    EXPECT_TRUE(close_relative(y.data(), expected, 1e-5)) << "trial " << trial;
  }
}

TEST(DepthwiseConv2d, MatchesDirectSummation) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    DepthwiseConv2d l;
    l.channels = 1 + uniform_index(rng, 4);
    l.kernel_h = 1 + uniform_index(rng, 3);
    l.kernel_w = 1 + uniform_index(rng, 3);
    l.stride = 1 + uniform_index(rng, 2);
    l.padding = uniform_index(rng, 2);
    l.weights = random_floats(rng, l.channels * l.kernel_h * l.kernel_w);
    l.bias = random_floats(rng, l.channels);
    const auto x = random_tensor(rng, {l.channels, 4 + uniform_index(rng, 6), 4 + uniform_index(rng, 6)});
    std::size_t oh = 0, ow = 0;
    const auto expected = test::oracle_depthwise(to_volume(x), l, oh, ow);
    EXPECT_TRUE(close_relative(forward_layer(l, x).data(), expected, 1e-5)) << "trial " << trial;
  }
}

TEST(MaxPool, MatchesDirectMaximum) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    MaxPool l{1 + uniform_index(rng, 3), 1 + uniform_index(rng, 3)};
    const auto x = random_tensor(rng, {1 + uniform_index(rng, 3), 4 + uniform_index(rng, 6), 4 + uniform_index(rng, 6)});
    std::size_t oh = 0, ow = 0;
    const auto expected = test::oracle_max_pool(to_volume(x), l, oh, ow);
    const auto y = forward_layer(l, x);
    EXPECT_EQ(y.shape(), (Shape{x.shape()[0], oh, ow}));
    EXPECT_TRUE(close_relative(y.data(), expected, 0.0));
  }
}

TEST(Dense, MatchesDirectSummation) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    Dense l;
    l.in_features = 1 + uniform_index(rng, 40);
    l.out_features = 1 + uniform_index(rng, 10);
    l.weights = random_floats(rng, l.in_features * l.out_features);
    l.bias = random_floats(rng, l.out_features);
    const auto x = random_tensor(rng, {l.in_features});
    const std::vector<double> xd(x.data().begin(), x.data().end());
    EXPECT_TRUE(close_relative(forward_layer(l, x).data(), test::oracle_dense(xd, l), 1e-5));
  }
}

TEST(Dense, FlattensChannelInputs) {
  Rng rng(5);
  Dense l{12, 2, random_floats(rng, 24), random_floats(rng, 2)};
  const auto x = random_tensor(rng, {3, 2, 2});
  const std::vector<double> xd(x.data().begin(), x.data().end());
  EXPECT_TRUE(close_relative(forward_layer(l, x).data(), test::oracle_dense(xd, l), 1e-5));
}

TEST(BatchNorm, AppliesAffineNormalization) {
  BatchNorm l{{2.0f}, {0.5f}, {1.0f}, {3.999f}};
  const Tensor x({1, 1, 2}, {1.0f, 3.0f});
  const auto y = forward_layer(l, x);
  // scale = 2 / sqrt(3.999 + 0.001) = 1
  EXPECT_NEAR(y.data()[0], 0.5, 1e-6);
  EXPECT_NEAR(y.data()[1], 2.5, 1e-6);
}

TEST(ReluAndGlobalAvgPool, Basics) {
  const Tensor x({2, 1, 2}, {-1.0f, 3.0f, 2.0f, 4.0f});
  const auto r = forward_layer(Relu{}, x);
  EXPECT_EQ(std::vector<float>(r.data().begin(), r.data().end()), (std::vector<float>{0, 3, 2, 4}));
  const auto g = forward_layer(GlobalAvgPool{}, x);
  EXPECT_EQ(g.shape(), (Shape{2}));
  EXPECT_FLOAT_EQ(g.data()[0], 1.0f);
  EXPECT_FLOAT_EQ(g.data()[1], 3.0f);
}

TEST(Softmax, ClosedForm) {
  const std::vector<float> z{2, 1, 0};
  const auto p = softmax(z);
  EXPECT_NEAR(p[0], 0.6652, 1e-4);
  EXPECT_NEAR(p[1], 0.2447, 1e-4);
  EXPECT_NEAR(p[2], 0.0900, 1e-4);
}

TEST(Softmax, SumsToOneAndIsShiftInvariant) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    auto z = random_floats(rng, 1 + uniform_index(rng, 12), 20.0);
    for (auto& v : z) v = std::round(v * 64.0f) / 64.0f;
    const auto p = softmax(z);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-6);
    const float shift = static_cast<float>(uniform_index(rng, 101)) - 50.0f;
    for (auto& v : z) v += shift;
    const auto q = softmax(z);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-6);
  }
}

TEST(Softmax, LargeLogitsDoNotOverflow) {
  const std::vector<float> z{1000.0f, 999.0f};
  const auto p = softmax(z);
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(-1.0)), 1e-6);
}

TEST(Network, ShapeErrorsNameTheLayer) {
  Rng rng(7);
  std::vector<Layer> layers;
  layers.emplace_back(Conv2d{4, 1, 3, 3, 1, 1, random_floats(rng, 36), random_floats(rng, 4)});
  layers.emplace_back(Conv2d{4, 3, 3, 3, 1, 1, random_floats(rng, 108), random_floats(rng, 4)});
  try {
    Network net(std::move(layers));
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("layer 1 conv2d"), std::string::npos) << e.what();
  }
}

TEST(Network, MustEndInSevenWaySoftmax) {
  Rng rng(8);
  std::vector<Layer> layers{GlobalAvgPool{}, Dense{1, 5, random_floats(rng, 5), random_floats(rng, 5)},
                            Softmax{}};
  EXPECT_THROW(Network{layers}, ShapeError);
  layers = {GlobalAvgPool{}, Dense{1, 7, random_floats(rng, 7), random_floats(rng, 7)}};
  EXPECT_THROW(Network{layers}, ShapeError);
}

TEST(Network, ForwardMatchesLayerByLayerOracle) {
  const auto net = make_reference_network(2026);
  Rng rng(9);
  const auto x = random_tensor(rng, kFaceInputShape);
  // Chain the oracle through the reference architecture.
  auto vol = to_volume(x);
  std::size_t oh = 0, ow = 0;
  const auto& L = net.layers();
  auto set = [&](std::vector<double> v, std::size_t c) {
    vol = {c, oh, ow, std::move(v)};
  };
  const auto& c0 = std::get<Conv2d>(L[0]);
  set(test::oracle_conv(vol, c0, oh, ow), c0.out_channels);
  const auto& bn = std::get<BatchNorm>(L[1]);
  for (std::size_t c = 0; c < vol.c; ++c)
    for (std::size_t i = 0; i < vol.h * vol.w; ++i) {
      auto& v = vol.v[c * vol.h * vol.w + i];
      v = (v - bn.mean[c]) * bn.gamma[c] / std::sqrt(bn.variance[c] + 1e-3) + bn.beta[c];
      v = std::max(v, 0.0);
    }
  set(test::oracle_max_pool(vol, std::get<MaxPool>(L[3]), oh, ow), vol.c);
  set(test::oracle_depthwise(vol, std::get<DepthwiseConv2d>(L[4]), oh, ow), vol.c);
  for (auto& v : vol.v) v = std::max(v, 0.0);
  const auto& pw = std::get<Conv2d>(L[6]);
  set(test::oracle_conv(vol, pw, oh, ow), pw.out_channels);
  for (auto& v : vol.v) v = std::max(v, 0.0);
  set(test::oracle_max_pool(vol, std::get<MaxPool>(L[8]), oh, ow), vol.c);
  std::vector<double> pooled(vol.c);
  for (std::size_t c = 0; c < vol.c; ++c) {
    for (std::size_t i = 0; i < vol.h * vol.w; ++i) pooled[c] += vol.v[c * vol.h * vol.w + i];
    pooled[c] /= static_cast<double>(vol.h * vol.w);
  }
  const auto expected = test::oracle_softmax(test::oracle_dense(pooled, std::get<Dense>(L[10])));
  EXPECT_TRUE(close_relative(net.forward(x).data(), expected, 1e-5));
}

TEST(Weights, RoundTripPreservesOutputs) {
  const auto net = make_reference_network(1);
  const auto bytes = save_weights(net);
  const auto loaded = load_weights(bytes);
  EXPECT_EQ(save_weights(loaded), bytes);
  Rng rng(10);
  const auto x = random_tensor(rng, kFaceInputShape);
  EXPECT_EQ(net.forward(x), loaded.forward(x));
}

TEST(Weights, EveryTruncationIsALoadError) {
  const auto bytes = save_weights(make_reference_network(1));
  for (std::size_t n = 0; n < bytes.size(); n += 7) {
    EXPECT_THROW(load_weights(std::span(bytes).first(n)), LoadError) << "length " << n;
  }
}

TEST(Weights, RejectsTrailingBytesAndBadMagic) {
  auto bytes = save_weights(make_reference_network(1));
  auto longer = bytes;
  longer.push_back(std::byte{0});
  EXPECT_THROW(load_weights(longer), LoadError);
  bytes[0] = std::byte{'X'};
  EXPECT_THROW(load_weights(bytes), LoadError);
}

TEST(Weights, MissingFileNamesTheAsset) {
  try {
    load_weights_file("/nonexistent/net.ferw");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("weights: not found", 0), 0u) << e.what();
  }
}

TEST(Weights, ShippedReferenceFileIsReproducible) {
  const auto shipped = load_weights_file(test::asset("weights/reference_net.ferw"));
  EXPECT_EQ(save_weights(shipped), save_weights(make_reference_network(2026)));
}

TEST(Classifier, ProbabilitiesFormADistribution) {
  NetworkClassifier classifier(make_reference_network(3), "ref");
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const auto p = classifier.classify(random_tensor(rng, kFaceInputShape));
    double sum = 0;
    for (double v : p.values()) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  EXPECT_NE(classifier.identity().find("ref"), std::string::npos);
}

TEST(Classifier, RejectsWrongInputShape) {
  const auto net = make_reference_network(3);
  EXPECT_THROW(infer_probs(net, Tensor({1, 32, 32})), ShapeError);
}

}  // namespace
}  // namespace mirror::fer
