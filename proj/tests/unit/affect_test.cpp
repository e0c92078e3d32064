// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "mirror/affect/emotion.hpp"
#include "mirror/affect/lexicon.hpp"
#include "mirror/error.hpp"
#include "test_support.hpp"

namespace mirror::affect {
namespace {

// `confidence` on c, the rest spread evenly.
EmotionProbabilities peaked(EmotionCategory c, double confidence) {
  std::array<double, kCategoryCount> v{};
  v.fill((1.0 - confidence) / (kCategoryCount - 1));
  v[index_of(c)] = confidence;
  return EmotionProbabilities::normalized(v);
}

TEST(EmotionProbabilities, RejectsNonDistributions) {
  const std::array<double, 7> negative{-0.1, 0.3, 0.2, 0.2, 0.2, 0.1, 0.1};
  const std::array<double, 7> short_sum{0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
  const std::array<double, 7> nan{NAN, 0.5, 0.5, 0, 0, 0, 0};
  EXPECT_THROW(EmotionProbabilities::from_values(negative), std::invalid_argument);
  EXPECT_THROW(EmotionProbabilities::from_values(short_sum), std::invalid_argument);
  EXPECT_THROW(EmotionProbabilities::from_values(nan), std::invalid_argument);
  const std::vector<double> six(6, 1.0 / 6);
  EXPECT_THROW(EmotionProbabilities::from_values(six), std::invalid_argument);
}

TEST(EmotionProbabilities, AcceptsSumWithinTolerance) {
  std::array<double, 7> v{0.5, 0.5, 0, 0, 0, 0, 0};
  v[0] += 5e-7;
  EXPECT_NO_THROW(EmotionProbabilities::from_values(v));
  v[0] += 1e-5;
  EXPECT_THROW(EmotionProbabilities::from_values(v), std::invalid_argument);
}

TEST(EmotionProbabilities, NormalizedDividesBySum) {
  const std::array<double, 7> scores{1, 1, 2, 0, 0, 0, 4};
  const auto p = EmotionProbabilities::normalized(scores);
  EXPECT_DOUBLE_EQ(p[EmotionCategory::fear], 0.25);
  EXPECT_DOUBLE_EQ(p[EmotionCategory::neutral], 0.5);
  const std::array<double, 7> zeros{};
  EXPECT_THROW(EmotionProbabilities::normalized(zeros), std::invalid_argument);
}

TEST(DominantEmotion, TiesGoToLowestIndex) {
  const std::array<double, 7> tie{0, 0, 0.4, 0.4, 0.2, 0, 0};
  const auto d = dominant_emotion(EmotionProbabilities::from_values(tie));
  EXPECT_EQ(d.category, EmotionCategory::fear);
  EXPECT_DOUBLE_EQ(d.confidence, 0.4);
  EXPECT_EQ(dominant_emotion(EmotionProbabilities::uniform()).category, EmotionCategory::angry);
}

TEST(EmotionCategory, NamesRoundTrip) {
  for (auto c : kAllCategories) EXPECT_EQ(parse_category(to_string(c)), c);
  EXPECT_FALSE(parse_category("bored").has_value());
}

TEST(MapEmotion, HappyAnchors) {
  const auto lex = EmotionLexicon::defaults();
  EXPECT_EQ(map_emotion(peaked(EmotionCategory::happy, 0.35), lex), "glad");
  EXPECT_EQ(map_emotion(peaked(EmotionCategory::happy, 0.95), lex), "ecstatic");
}

TEST(MapEmotion, BandEdgesBelongToUpperBand) {
  const auto lex = EmotionLexicon::defaults();
  EXPECT_EQ(lex.word_for(EmotionCategory::happy, 0.5999), "glad");
  EXPECT_EQ(lex.word_for(EmotionCategory::happy, 0.6), "joyful");
  EXPECT_EQ(lex.word_for(EmotionCategory::happy, 0.85), "ecstatic");
  EXPECT_EQ(lex.word_for(EmotionCategory::happy, 1.0), "ecstatic");
  EXPECT_EQ(lex.word_for(EmotionCategory::sad, 0.0), "wistful");
}

TEST(MapEmotion, DefaultWordsPerCategory) {
  const auto lex = EmotionLexicon::defaults();
  const std::map<EmotionCategory, std::array<const char*, 3>> expected{
      {EmotionCategory::angry, {"annoyed", "angry", "furious"}},
      {EmotionCategory::disgust, {"put-off", "disgusted", "revolted"}},
      {EmotionCategory::fear, {"uneasy", "afraid", "terrified"}},
      {EmotionCategory::happy, {"glad", "joyful", "ecstatic"}},
      {EmotionCategory::sad, {"wistful", "melancholy", "devastated"}},
      {EmotionCategory::surprise, {"curious", "surprised", "astonished"}},
      {EmotionCategory::neutral, {"relaxed", "calm", "still"}},
  };
  for (const auto& [c, words] : expected) {
    EXPECT_EQ(map_emotion(peaked(c, 0.4), lex), words[0]) << to_string(c);
    EXPECT_EQ(map_emotion(peaked(c, 0.7), lex), words[1]) << to_string(c);
    EXPECT_EQ(map_emotion(peaked(c, 0.9), lex), words[2]) << to_string(c);
  }
}

// Random vectors: the word comes from the dominant category's bands, and
// raising that category's confidence never lowers the band.
TEST(MapEmotion, WordFollowsDominantCategoryAndIsMonotone) {
  const auto lex = EmotionLexicon::defaults();
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<double, 7> raw{};
    for (auto& v : raw) v = uniform_unit(rng) + 1e-9;
    const auto p = EmotionProbabilities::normalized(raw);
    const auto d = dominant_emotion(p);
    const auto word = map_emotion(p, lex);
    const auto& bands = lex.bands(d.category);
    const auto it = std::find_if(bands.begin(), bands.end(),
                                 [&](const IntensityBand& b) { return b.word == word; });
    ASSERT_NE(it, bands.end());
    const double c2 = std::min(1.0, d.confidence + 0.2 * uniform_unit(rng));
    EXPECT_GE(lex.band_index(d.category, c2), lex.band_index(d.category, d.confidence));
  }
}

TEST(EmotionLexicon, ValidatesBands) {
  auto bands = EmotionLexicon::defaults().bands(EmotionCategory::happy);
  EmotionLexicon::BandTable table;
  for (auto& t : table) t = bands;
  const std::vector<std::string> prefixes{"You are"};
  EXPECT_NO_THROW(EmotionLexicon(table, prefixes));

  auto bad = table;
  bad[0][0].lower_threshold = 0.1;
  EXPECT_THROW(EmotionLexicon(bad, prefixes), ConfigError);
  bad = table;
  bad[1][2].lower_threshold = 0.6;
  EXPECT_THROW(EmotionLexicon(bad, prefixes), ConfigError);
  bad = table;
  bad[2][1].word.clear();
  EXPECT_THROW(EmotionLexicon(bad, prefixes), ConfigError);
  bad = table;
  bad[3].clear();
  EXPECT_THROW(EmotionLexicon(bad, prefixes), ConfigError);
  EXPECT_THROW(EmotionLexicon(table, {}), ConfigError);
}

TEST(EmotionLexicon, ShippedFileMatchesDefaults) {
  const auto shipped = load_lexicon(test::asset("lexicon/default_lexicon.json"));
  EXPECT_EQ(serialize_lexicon(shipped), serialize_lexicon(EmotionLexicon::defaults()));
}

TEST(EmotionLexicon, SerializeRoundTrip) {
  const auto lex = parse_lexicon(R"({"prefixes": ["Now you are"],
      "categories": {"sad": [{"from": 0, "word": "blue"}, {"from": 0.5, "word": "heavy"}]}})");
  EXPECT_EQ(lex.prefixes(), std::vector<std::string>{"Now you are"});
  EXPECT_EQ(lex.word_for(EmotionCategory::sad, 0.7), "heavy");
  EXPECT_EQ(lex.word_for(EmotionCategory::happy, 0.7), "joyful");
  const auto again = parse_lexicon(serialize_lexicon(lex));
  EXPECT_EQ(serialize_lexicon(again), serialize_lexicon(lex));
}

TEST(EmotionLexicon, ParseErrors) {
  EXPECT_THROW(parse_lexicon("{"), ConfigError);
  EXPECT_THROW(parse_lexicon(R"({"categories": {"bored": []}})"), ConfigError);
  EXPECT_THROW(parse_lexicon(R"({"categories": {"sad": [{"from": 0.2, "word": "x"}]}})"),
               ConfigError);
  EXPECT_THROW(load_lexicon("/nonexistent/lexicon.json"), LoadError);
}

TEST(ComposeSeed, TextIsPrefixSpaceWord) {
  Rng rng(3);
  const auto seed = compose_seed("glad", EmotionLexicon::defaults(), rng);
  EXPECT_EQ(seed.text, seed.prefix + " " + seed.emotion_word);
  EXPECT_EQ(seed.emotion_word, "glad");
}

TEST(ComposeSeed, PrefixesAreUniform) {
  const std::vector<std::string> prefixes{"A", "B", "C", "D"};
  Rng rng(5);
  std::map<std::string, int> counts;
  const int n = 40000;
  for (int i = 0; i < n; ++i) ++counts[compose_seed("w", prefixes, rng).prefix];
  // Binomial sd is sqrt(n * 1/4 * 3/4) ~ 87; allow 5 sd.
  for (const auto& p : prefixes) EXPECT_NEAR(counts[p], n / 4, 5 * 87) << p;
}

TEST(ComposeSeed, DeterministicForSeed) {
  const auto lex = EmotionLexicon::defaults();
  Rng a(99), b(99);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(compose_seed("calm", lex, a), compose_seed("calm", lex, b));
}

TEST(ComposeSeed, RejectsEmptyInputs) {
  Rng rng(1);
  const std::vector<std::string> none;
  EXPECT_THROW(compose_seed("glad", none, rng), ConfigError);
  const std::vector<std::string> one{"You are"};
  EXPECT_THROW(compose_seed("", one, rng), ConfigError);
}

}  // namespace
}  // namespace mirror::affect
