// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "mirror/error.hpp"
#include "mirror/poet/generator.hpp"
#include "mirror/poet/sampling.hpp"

namespace mirror::poet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(TopK, KeepsHighestWithIndexTieBreak) {
  const std::vector<double> logits{0.5, 2.0, 2.0, -1.0, 3.0};
  EXPECT_EQ(top_k_candidates(logits, 3), (std::vector<TokenId>{4, 1, 2}));
  EXPECT_EQ(top_k_candidates(logits, 99).size(), logits.size());
  EXPECT_THROW(top_k_candidates(logits, 0), std::invalid_argument);
}

TEST(Sample, FrequenciesMatchSoftmaxOverTopK) {
  const std::vector<double> logits{2.0, 1.0, 0.0};
  Rng rng(42);
  constexpr int kDraws = 100000;
  std::array<int, 3> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[sample_token(logits, 1.0, 2, rng)];
  // Exact: e^2 / (e^2 + e) and its complement.
  const double p0 = 1.0 / (1.0 + std::exp(-1.0));
  const double sd = std::sqrt(kDraws * p0 * (1.0 - p0));
  EXPECT_NEAR(counts[0], kDraws * p0, 3 * sd);
  EXPECT_NEAR(counts[1], kDraws * (1.0 - p0), 3 * sd);
  EXPECT_EQ(counts[2], 0);
}

TEST(Sample, TemperatureSharpensAndFlattens) {
  const std::vector<double> logits{1.0, 0.0};
  auto freq0 = [&](double temperature) {
    Rng rng(1);
    int hits = 0;
    for (int i = 0; i < 20000; ++i) hits += sample_token(logits, temperature, 2, rng) == 0;
    return hits / 20000.0;
  };
  EXPECT_NEAR(freq0(0.5), 1.0 / (1.0 + std::exp(-2.0)), 0.015);
  EXPECT_NEAR(freq0(4.0), 1.0 / (1.0 + std::exp(-0.25)), 0.015);
}

TEST(Sample, NeverLeavesTopKSet) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 30);
    std::vector<double> logits(n);
    for (auto& l : logits) l = uniform_index(rng, 10) == 0 ? -kInf : 10.0 * (uniform_unit(rng) - 0.5);
    logits[uniform_index(rng, n)] = 0.0;
    const int k = 1 + static_cast<int>(uniform_index(rng, n));
    const double temperature = 0.05 + 3.0 * uniform_unit(rng);
    const auto kept = top_k_candidates(logits, k);
    const std::set<TokenId> allowed(kept.begin(), kept.end());
    for (int d = 0; d < 50; ++d) {
      const auto t = sample_token(logits, temperature, k, rng);
      ASSERT_TRUE(allowed.count(t)) << "trial " << trial;
      ASSERT_NE(logits[t], -kInf);
    }
  }
}

TEST(Sample, TopOneIsGreedy) {
  Rng rng(3);
  const std::vector<double> logits{0.1, 0.9, 0.3};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_token(logits, 0.8, 1, rng), 1u);
}

TEST(Sample, DeterministicForSeed) {
  const std::vector<double> logits{0.0, 0.5, 1.0, 1.5};
  Rng a(99), b(99);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(sample_token(logits, 1.0, 4, a), sample_token(logits, 1.0, 4, b));
}

TEST(Sample, RejectsBadInputs) {
  Rng rng(0);
  const std::vector<double> logits{1.0};
  EXPECT_THROW(sample_token(logits, 0.0, 1, rng), std::invalid_argument);
  EXPECT_THROW(sample_token(logits, NAN, 1, rng), std::invalid_argument);
  EXPECT_THROW(sample_token(std::vector<double>{}, 1.0, 1, rng), GenerationError);
  EXPECT_THROW(sample_token(std::vector<double>{-kInf, -kInf}, 1.0, 2, rng), GenerationError);
}

// Emits a fixed token script, then end-of-text.
class ScriptBackend final : public TokenBackend {
 public:
  explicit ScriptBackend(std::vector<std::string> words) : words_(std::move(words)) {}
  Context begin(std::string_view) const override { return {}; }
  std::vector<double> next_logits(const Context& context) const override {
    std::vector<double> logits(words_.size() + 1, -kInf);
    logits[context.size() < words_.size() ? context.size() + 1 : 0] = 0.0;
    return logits;
  }
  std::string decode(std::span<const TokenId> tokens) const override {
    std::string out;
    for (auto t : tokens) out += " " + words_[t - 1];
    return out;
  }
  std::size_t vocab_size() const override { return words_.size() + 1; }
  TokenId end_of_text() const override { return 0; }
  std::string identity() const override { return "script"; }

 private:
  std::vector<std::string> words_;
};

TEST(GenerateRaw, StopsAtEndOfTextAndMarksComplete) {
  ScriptBackend backend({"a", "b", "c"});
  Rng rng(0);
  const auto seed = affect::SeedText::make("You are", "calm");
  const auto raw = generate_raw(backend, seed, GenerationParams{}, rng);
  EXPECT_EQ(raw.text, "You are calm a b c");
  EXPECT_TRUE(raw.complete);
}

TEST(GenerateRaw, TokenBudgetCapsOutput) {
  ScriptBackend backend(std::vector<std::string>(100, "w"));
  GenerationParams params;
  params.max_words = 10;
  Rng rng(0);
  const auto raw = generate_raw(backend, affect::SeedText::make("So", "calm"), params, rng);
  EXPECT_FALSE(raw.complete);
  EXPECT_EQ(std::count(raw.text.begin(), raw.text.end(), 'w'), params.token_budget());
}

}  // namespace
}  // namespace mirror::poet
