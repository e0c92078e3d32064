// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "mirror/affect/emotion.hpp"
#include "mirror/fer/network.hpp"

namespace mirror::fer {

/// Anything that turns a preprocessed 1x48x48 face into emotion probabilities.
class ClassifierBackend {
 public:
  virtual ~ClassifierBackend() = default;
  virtual affect::EmotionProbabilities classify(const Tensor& face) const = 0;
  virtual std::string identity() const = 0;
};

class NetworkClassifier final : public ClassifierBackend {
 public:
  NetworkClassifier(Network net, std::string name);

  affect::EmotionProbabilities classify(const Tensor& face) const override;
  std::string identity() const override;

  const Network& network() const { return net_; }

 private:
  Network net_;
  std::string name_;
};

}  // namespace mirror::fer
