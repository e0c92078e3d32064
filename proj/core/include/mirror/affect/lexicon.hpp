// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mirror/affect/emotion.hpp"
#include "mirror/random.hpp"

namespace mirror::affect {

/// Confidence interval [lower_threshold, next band's threshold) mapped to a word.
struct IntensityBand {
  double lower_threshold = 0.0;
  std::string word;
};

/// The emotion vocabulary: intensity bands per category plus the seed prefixes.
///
/// Per category the thresholds start at 0 and strictly increase, so every
/// confidence in [0, 1] lands in exactly one band. Immutable once built.
class EmotionLexicon {
 public:
  using BandTable = std::array<std::vector<IntensityBand>, kCategoryCount>;

  /// Throws ConfigError when a category's bands or the prefix list are invalid.
  EmotionLexicon(BandTable bands, std::vector<std::string> prefixes);

  /// Three bands per category at 0 / 0.6 / 0.85.
  static EmotionLexicon defaults();

  const std::vector<IntensityBand>& bands(EmotionCategory c) const { return bands_[index_of(c)]; }
  const std::vector<std::string>& prefixes() const { return prefixes_; }

  /// Index of the band containing `confidence`; the last band is closed at 1.
  std::size_t band_index(EmotionCategory c, double confidence) const;
  const std::string& word_for(EmotionCategory c, double confidence) const;

 private:
  BandTable bands_;
  std::vector<std::string> prefixes_;
};

/// Parses the JSON lexicon format (see docs/formats.md). Categories absent
/// from the file keep their default bands; "prefixes" replaces the defaults.
EmotionLexicon parse_lexicon(std::string_view json_text);
EmotionLexicon load_lexicon(const std::filesystem::path& path);
std::string serialize_lexicon(const EmotionLexicon& lexicon);

/// The mapping from a probability vector to an intensity-graded emotion word.
std::string map_emotion(const EmotionProbabilities& p, const EmotionLexicon& lexicon);

/// Opening phrase of a poem: `text` is always prefix + " " + emotion_word.
struct SeedText {
  std::string prefix;
  std::string emotion_word;
  std::string text;

  static SeedText make(std::string prefix, std::string emotion_word);
  friend bool operator==(const SeedText&, const SeedText&) = default;
};

/// Picks a prefix uniformly. Throws ConfigError for an empty prefix list or word.
SeedText compose_seed(std::string_view word, std::span<const std::string> prefixes, Rng& rng);
SeedText compose_seed(std::string_view word, const EmotionLexicon& lexicon, Rng& rng);

}  // namespace mirror::affect
