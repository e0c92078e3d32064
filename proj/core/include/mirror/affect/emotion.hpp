// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace mirror::affect {

/// Facial-expression categories in FER-2013 label order.
enum class EmotionCategory : std::uint8_t {
  angry = 0,
  disgust = 1,
  fear = 2,
  happy = 3,
  sad = 4,
  surprise = 5,
  neutral = 6,
};

inline constexpr std::size_t kCategoryCount = 7;

inline constexpr std::array<EmotionCategory, kCategoryCount> kAllCategories{
    EmotionCategory::angry, EmotionCategory::disgust, EmotionCategory::fear,
    EmotionCategory::happy, EmotionCategory::sad,     EmotionCategory::surprise,
    EmotionCategory::neutral};

constexpr std::size_t index_of(EmotionCategory c) { return static_cast<std::size_t>(c); }

std::string_view to_string(EmotionCategory c);
std::optional<EmotionCategory> parse_category(std::string_view name);

/// A probability vector over the seven categories. Construction validates:
/// every component is finite and >= 0, and the components sum to 1 within 1e-6.
class EmotionProbabilities {
 public:
  static constexpr double kSumTolerance = 1e-6;

  /// Throws std::invalid_argument when the values are not a distribution.
  static EmotionProbabilities from_values(std::span<const double> values);
  /// Divides non-negative scores by their sum. Throws if the sum is not positive.
  static EmotionProbabilities normalized(std::span<const double> scores);
  static EmotionProbabilities one_hot(EmotionCategory c);
  static EmotionProbabilities uniform();

  double operator[](EmotionCategory c) const { return p_[index_of(c)]; }
  double at(std::size_t i) const { return p_.at(i); }
  const std::array<double, kCategoryCount>& values() const { return p_; }

  friend bool operator==(const EmotionProbabilities&, const EmotionProbabilities&) = default;

 private:
  explicit EmotionProbabilities(const std::array<double, kCategoryCount>& p) : p_(p) {}
  std::array<double, kCategoryCount> p_{};
};

struct DominantEmotion {
  EmotionCategory category;
  double confidence;
};

/// Argmax category and its probability; ties go to the lowest index.
DominantEmotion dominant_emotion(const EmotionProbabilities& p);

}  // namespace mirror::affect
