// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "mirror/affect/emotion.hpp"
#include "mirror/fer/layers.hpp"

namespace mirror::fer {

inline const Shape kFaceInputShape{1, 48, 48};

/// A shape-checked feed-forward network from a 1x48x48 face to 7 probabilities.
class Network {
 public:
  /// Throws ShapeError naming the first layer whose parameters do not chain,
  /// or when the network does not end in a 7-way softmax.
  explicit Network(std::vector<Layer> layers);

  const std::vector<Layer>& layers() const { return layers_; }
  const Shape& input_shape() const { return kFaceInputShape; }

  /// Sequential forward pass; returns the raw output of the last layer.
  Tensor forward(const Tensor& input) const;

 private:
  std::vector<Layer> layers_;
};

/// Reads the FERW weights format (docs/formats.md). Throws LoadError.
Network load_weights(std::span<const std::byte> bytes);
Network load_weights_file(const std::filesystem::path& path);
std::vector<std::byte> save_weights(const Network& net);

/// Forward pass mapped onto the emotion categories.
affect::EmotionProbabilities infer_probs(const Network& net, const Tensor& face);

}  // namespace mirror::fer
