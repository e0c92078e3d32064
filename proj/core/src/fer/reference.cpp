// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/fer/reference.hpp"

#include <cmath>

#include "mirror/random.hpp"

namespace mirror::fer {
namespace {

std::vector<float> uniform(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(lo + (hi - lo) * uniform_unit(rng));
  return v;
}

std::vector<float> he_uniform(Rng& rng, std::size_t n, std::size_t fan_in, double gain = 1.0) {
  const double a = gain * std::sqrt(6.0 / static_cast<double>(fan_in));
  return uniform(rng, n, -a, a);
}

}  // namespace

Network make_reference_network(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Layer> layers;

  Conv2d stem{8, 1, 3, 3, 1, 1, he_uniform(rng, 8 * 9, 9), uniform(rng, 8, -0.1, 0.1)};
  layers.emplace_back(std::move(stem));
  BatchNorm bn{uniform(rng, 8, 0.9, 1.1), uniform(rng, 8, -0.1, 0.1), uniform(rng, 8, -0.1, 0.1),
               uniform(rng, 8, 0.5, 1.5)};
  layers.emplace_back(std::move(bn));
  layers.emplace_back(Relu{});
  layers.emplace_back(MaxPool{2, 2});

  DepthwiseConv2d dw{8, 3, 3, 1, 1, he_uniform(rng, 8 * 9, 9), uniform(rng, 8, -0.1, 0.1)};
  layers.emplace_back(std::move(dw));
  layers.emplace_back(Relu{});
  Conv2d pointwise{16, 8, 1, 1, 1, 0, he_uniform(rng, 16 * 8, 8), uniform(rng, 16, -0.1, 0.1)};
  layers.emplace_back(std::move(pointwise));
  layers.emplace_back(Relu{});
  layers.emplace_back(MaxPool{2, 2});

  layers.emplace_back(GlobalAvgPool{});
  Dense head{16, 7, he_uniform(rng, 7 * 16, 16, 2.0), uniform(rng, 7, -0.5, 0.5)};
  layers.emplace_back(std::move(head));
  layers.emplace_back(Softmax{});
  return Network(std::move(layers));
}

}  // namespace mirror::fer
