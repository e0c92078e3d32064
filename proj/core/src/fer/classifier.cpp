// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/fer/classifier.hpp"

namespace mirror::fer {

NetworkClassifier::NetworkClassifier(Network net, std::string name)
    : net_(std::move(net)), name_(std::move(name)) {}

affect::EmotionProbabilities NetworkClassifier::classify(const Tensor& face) const {
  return infer_probs(net_, face);
}

std::string NetworkClassifier::identity() const {
  return "fer-net:" + name_ + " (" + std::to_string(net_.layers().size()) + " layers)";
}

}  // namespace mirror::fer
