// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/affect/lexicon.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mirror/error.hpp"

namespace mirror::affect {
namespace {

using json = nlohmann::json;

EmotionLexicon::BandTable default_bands() {
  auto three = [](const char* low, const char* mid, const char* high) {
    return std::vector<IntensityBand>{{0.0, low}, {0.6, mid}, {0.85, high}};
  };
  return {
      three("annoyed", "angry", "furious"),
      three("put-off", "disgusted", "revolted"),
      three("uneasy", "afraid", "terrified"),
      three("glad", "joyful", "ecstatic"),
      three("wistful", "melancholy", "devastated"),
      three("curious", "surprised", "astonished"),
      three("relaxed", "calm", "still"),
  };
}

std::vector<std::string> default_prefixes() {
  return {"You are feeling", "You can be", "You are", "So"};
}

void validate_bands(EmotionCategory c, const std::vector<IntensityBand>& bands) {
  const std::string name(to_string(c));
  if (bands.empty()) throw ConfigError("lexicon: category '" + name + "' has no bands");
  if (bands.front().lower_threshold != 0.0) {
    throw ConfigError("lexicon: first threshold of '" + name + "' must be 0");
  }
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& band = bands[i];
    if (!std::isfinite(band.lower_threshold) || band.lower_threshold < 0.0 ||
        band.lower_threshold > 1.0) {
      throw ConfigError("lexicon: threshold of '" + name + "' band " + std::to_string(i) +
                        " is outside [0, 1]");
    }
    if (i > 0 && !(band.lower_threshold > bands[i - 1].lower_threshold)) {
      throw ConfigError("lexicon: thresholds of '" + name + "' must strictly increase");
    }
    if (band.word.empty()) {
      throw ConfigError("lexicon: empty word in '" + name + "' band " + std::to_string(i));
    }
  }
}

}  // namespace

EmotionLexicon::EmotionLexicon(BandTable bands, std::vector<std::string> prefixes)
    : bands_(std::move(bands)), prefixes_(std::move(prefixes)) {
  for (auto c : kAllCategories) validate_bands(c, bands_[index_of(c)]);
  if (prefixes_.empty()) throw ConfigError("lexicon: at least one prefix phrase is required");
  for (const auto& prefix : prefixes_) {
    if (prefix.empty()) throw ConfigError("lexicon: empty prefix phrase");
  }
}

EmotionLexicon EmotionLexicon::defaults() { return {default_bands(), default_prefixes()}; }

std::size_t EmotionLexicon::band_index(EmotionCategory c, double confidence) const {
  const auto& bands = bands_[index_of(c)];
  std::size_t idx = 0;
  while (idx + 1 < bands.size() && confidence >= bands[idx + 1].lower_threshold) ++idx;
  return idx;
}

const std::string& EmotionLexicon::word_for(EmotionCategory c, double confidence) const {
  return bands_[index_of(c)][band_index(c, confidence)].word;
}

EmotionLexicon parse_lexicon(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("lexicon: top level must be an object");

  auto bands = default_bands();
  auto prefixes = default_prefixes();
  try {
    if (doc.contains("prefixes")) prefixes = doc.at("prefixes").get<std::vector<std::string>>();
    if (doc.contains("categories")) {
      for (const auto& [name, list] : doc.at("categories").items()) {
        const auto category = parse_category(name);
        if (!category) throw ConfigError("lexicon: unknown category '" + name + "'");
        std::vector<IntensityBand> parsed;
        for (const auto& entry : list) {
          parsed.push_back({entry.at("from").get<double>(), entry.at("word").get<std::string>()});
        }
        bands[index_of(*category)] = std::move(parsed);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("lexicon: ") + e.what());
  }
  return {std::move(bands), std::move(prefixes)};
}

EmotionLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("lexicon: not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_lexicon(text.str());
}

std::string serialize_lexicon(const EmotionLexicon& lexicon) {
  json doc;
  doc["prefixes"] = lexicon.prefixes();
  json categories = json::object();
  for (auto c : kAllCategories) {
    json list = json::array();
    for (const auto& band : lexicon.bands(c)) {
      list.push_back({{"from", band.lower_threshold}, {"word", band.word}});
    }
    categories[std::string(to_string(c))] = std::move(list);
  }
  doc["categories"] = std::move(categories);
  return doc.dump(2) + "\n";
}

std::string map_emotion(const EmotionProbabilities& p, const EmotionLexicon& lexicon) {
  const auto dominant = dominant_emotion(p);
  return lexicon.word_for(dominant.category, dominant.confidence);
}

SeedText SeedText::make(std::string prefix, std::string emotion_word) {
  SeedText seed{std::move(prefix), std::move(emotion_word), {}};
  seed.text = seed.prefix + " " + seed.emotion_word;
  return seed;
}

SeedText compose_seed(std::string_view word, std::span<const std::string> prefixes, Rng& rng) {
  if (prefixes.empty()) throw ConfigError("seed: no prefix phrases configured");
  if (word.empty()) throw ConfigError("seed: empty emotion word");
  const auto& prefix = prefixes[uniform_index(rng, prefixes.size())];
  return SeedText::make(prefix, std::string(word));
}

SeedText compose_seed(std::string_view word, const EmotionLexicon& lexicon, Rng& rng) {
  return compose_seed(word, std::span<const std::string>(lexicon.prefixes()), rng);
}

}  // namespace mirror::affect
