// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/affect/emotion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mirror::affect {
namespace {

constexpr std::array<std::string_view, kCategoryCount> kNames{
    "angry", "disgust", "fear", "happy", "sad", "surprise", "neutral"};

std::array<double, kCategoryCount> copy_checked(std::span<const double> values) {
  if (values.size() != kCategoryCount) {
    throw std::invalid_argument("emotion probabilities need 7 components, got " +
                                std::to_string(values.size()));
  }
  std::array<double, kCategoryCount> out{};
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw std::invalid_argument("emotion probability " + std::to_string(i) +
                                  " is negative or not finite");
    }
    out[i] = values[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(EmotionCategory c) { return kNames[index_of(c)]; }

std::optional<EmotionCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (kNames[i] == name) return kAllCategories[i];
  }
  return std::nullopt;
}

EmotionProbabilities EmotionProbabilities::from_values(std::span<const double> values) {
  auto p = copy_checked(values);
  double sum = 0.0;
  for (double v : p) sum += v;
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("emotion probabilities sum to " + std::to_string(sum));
  }
  return EmotionProbabilities(p);
}

EmotionProbabilities EmotionProbabilities::normalized(std::span<const double> scores) {
  auto p = copy_checked(scores);
  double sum = 0.0;
  for (double v : p) sum += v;
  if (!(sum > 0.0)) throw std::invalid_argument("emotion scores sum to zero");
  for (double& v : p) v /= sum;
  return EmotionProbabilities(p);
}

EmotionProbabilities EmotionProbabilities::one_hot(EmotionCategory c) {
  std::array<double, kCategoryCount> p{};
  p[index_of(c)] = 1.0;
  return EmotionProbabilities(p);
}

EmotionProbabilities EmotionProbabilities::uniform() {
  std::array<double, kCategoryCount> p{};
  p.fill(1.0 / static_cast<double>(kCategoryCount));
  return EmotionProbabilities(p);
}

DominantEmotion dominant_emotion(const EmotionProbabilities& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kCategoryCount; ++i) {
    if (p.at(i) > p.at(best)) best = i;
  }
  return {kAllCategories[best], p.at(best)};
}

}  // namespace mirror::affect
