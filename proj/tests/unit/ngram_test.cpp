// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "mirror/error.hpp"
#include "mirror/poet/ngram.hpp"
#include "mirror/poet/poem.hpp"
#include "test_support.hpp"

namespace mirror::poet {
namespace {

using Seq = std::vector<TokenId>;

TEST(Tokenize, NewlinesAreTokens) {
  EXPECT_EQ(tokenize("a b\n\nc\t d "), (std::vector<std::string>{"a", "b", "\n", "\n", "c", "d"}));
  EXPECT_TRUE(tokenize("  ").empty());
}

TEST(SplitCorpus, SeparatorLinesAndBlankDocuments) {
  const auto docs = split_corpus("one\r\n%%\r\n\n%%\ntwo\nthree %%\n%%");
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(tokenize(docs[1]), (std::vector<std::string>{"two", "\n", "three", "%%"}));
}

TEST(ReadCorpus, MissingFile) {
  EXPECT_THROW(read_corpus("/nonexistent/corpus.txt"), LoadError);
}

// Every (suffix, next) pair of every padded document, counted by brute force.
std::map<std::pair<Seq, TokenId>, std::uint64_t> brute_counts(const std::vector<std::string>& docs,
                                                             const NgramModel& model) {
  std::map<std::pair<Seq, TokenId>, std::uint64_t> counts;
  for (const auto& doc : docs) {
    auto words = tokenize(doc);
    while (!words.empty() && words.front() == "\n") words.erase(words.begin());
    while (!words.empty() && words.back() == "\n") words.pop_back();
    if (words.empty()) continue;
    Seq seq{NgramModel::kBeginOfText};
    for (const auto& w : words) seq.push_back(model.token_id(w));
    seq.push_back(0);
    for (std::size_t i = 1; i < seq.size(); ++i)
      for (std::size_t start = 0; start <= i; ++start) {
        if (i - start >= static_cast<std::size_t>(model.order())) continue;
        ++counts[{Seq(seq.begin() + static_cast<long>(start), seq.begin() + static_cast<long>(i)), seq[i]}];
      }
  }
  return counts;
}

std::vector<std::string> random_docs(Rng& rng) {
  static const std::vector<std::string> words{"you", "are", "the", "light", "\n", "kind", "glass", "."};
  std::vector<std::string> docs(1 + uniform_index(rng, 4));
  for (auto& d : docs) {
    const auto n = 1 + uniform_index(rng, 25);
    for (std::size_t i = 0; i < n; ++i) d += words[uniform_index(rng, words.size())] + " ";
  }
  return docs;
}

TEST(Train, CountsMatchBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto docs = random_docs(rng);
    docs.push_back("light");  // guarantees at least one real token
    const int order = 2 + static_cast<int>(uniform_index(rng, 3));
    const auto model = train_ngram(docs, order, 0.1);
    const auto expected = brute_counts(docs, model);
    std::uint64_t listed = 0;
    for (const auto& [key, count] : expected) {
      ASSERT_EQ(model.count(key.first, key.second), count) << "trial " << trial;
    }
    for (const auto& [ctx, succ] : model.table()) {
      for (const auto& [next, count] : succ.counts) {
        listed += count;
        ASSERT_TRUE(expected.count({ctx, next}));
      }
    }
    std::uint64_t total = 0;
    for (const auto& [key, count] : expected) total += count;
    EXPECT_EQ(listed, total);
  }
}

TEST(Train, VocabularyInFirstAppearanceOrder) {
  const std::vector<std::string> docs{"b a\nb", "c"};
  const auto model = train_ngram(docs, 2, 0.5);
  EXPECT_EQ(model.vocabulary(), (std::vector<std::string>{"<eot>", "b", "a", "\n", "c"}));
  EXPECT_THROW(train_ngram(std::vector<std::string>{"\n\n", ""}, 2, 0.5), ConfigError);
  EXPECT_THROW(train_ngram(docs, 1, 0.5), ConfigError);
  EXPECT_THROW(train_ngram(docs, 3, -1.0), ConfigError);
}

TEST(NextLogits, SmoothedWithBackoff) {
  const std::vector<std::string> docs{"a b a c", "a b"};
  const auto model = train_ngram(docs, 3, 0.5);
  const double V = static_cast<double>(model.vocab_size());
  const auto a = model.token_id("a"), b = model.token_id("b"), c = model.token_id("c");

  // Context (a, b) was seen twice: followed by a once and by <eot> once.
  const Seq ab{a, b};
  EXPECT_EQ(model.backoff_length(ab), 2u);
  auto logits = model.next_logits(ab);
  EXPECT_NEAR(logits[a], std::log((1 + 0.5) / (2 + 0.5 * V)), 1e-12);
  EXPECT_NEAR(logits[0], std::log((1 + 0.5) / (2 + 0.5 * V)), 1e-12);
  EXPECT_NEAR(logits[c], std::log(0.5 / (2 + 0.5 * V)), 1e-12);

  // (c, b) never occurs; back off to (b).
  const Seq cb{c, b};
  EXPECT_EQ(model.backoff_length(cb), 1u);
  EXPECT_EQ(model.next_logits(cb), model.next_logits(Seq{b}));

  // Unknown words have no context at all beyond the empty one.
  const Seq unk{NgramModel::kUnknown, NgramModel::kUnknown};
  EXPECT_EQ(model.backoff_length(unk), 0u);
}

TEST(NextLogits, UniformWithoutObservations) {
  NgramModel model(2, 0.0, {"<eot>", "x"}, {});
  EXPECT_FALSE(model.backoff_length(Seq{1}).has_value());
  for (double l : model.next_logits(Seq{1})) EXPECT_NEAR(l, -std::log(2.0), 1e-12);
}

TEST(NextLogits, ZeroAlphaMarksUnseenImpossible) {
  const auto model = train_ngram(std::vector<std::string>{"a b"}, 2, 0.0);
  const auto logits = model.next_logits(Seq{model.token_id("a")});
  EXPECT_EQ(logits[model.token_id("a")], -std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(logits[model.token_id("b")], 0.0);
}

TEST(NextLogits, DistributionSumsToOne) {
  const auto docs = read_corpus(test::asset("corpus/second_person.txt"));
  const auto model = train_ngram(docs, 3, 0.01);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    Seq ctx{static_cast<TokenId>(uniform_index(rng, model.vocab_size())),
            static_cast<TokenId>(uniform_index(rng, model.vocab_size()))};
    double sum = 0;
    for (double l : model.next_logits(ctx)) sum += std::exp(l);
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(ModelValidation, RejectsInconsistentTables) {
  EXPECT_THROW(NgramModel(3, 0.1, {"x"}, {}), ConfigError);
  EXPECT_THROW(NgramModel(3, 0.1, {"<eot>", "x", "x"}, {}), ConfigError);
  NgramModel::Table bad;
  bad[{5}].counts[0] = 1;
  bad[{5}].total = 1;
  EXPECT_THROW(NgramModel(3, 0.1, {"<eot>", "x"}, bad), ConfigError);
  NgramModel::Table wrong_total;
  wrong_total[{1}].counts[0] = 2;
  wrong_total[{1}].total = 1;
  EXPECT_THROW(NgramModel(3, 0.1, {"<eot>", "x"}, wrong_total), ConfigError);
}

TEST(Persistence, RoundTripIsExact) {
  const auto model = train_ngram(read_corpus(test::asset("fixtures/toy_corpus.txt")), 3, 0.01);
  const auto text = serialize_ngram(model);
  const auto loaded = parse_ngram(text);
  EXPECT_EQ(serialize_ngram(loaded), text);
  EXPECT_EQ(loaded.vocabulary(), model.vocabulary());
  EXPECT_EQ(loaded.table().size(), model.table().size());
  test::TempDir dir;
  save_ngram(dir / "m.json", model);
  EXPECT_EQ(serialize_ngram(load_ngram(dir / "m.json")), text);
}

TEST(Persistence, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_ngram("not json"), LoadError);
  EXPECT_THROW(parse_ngram(R"({"format":"other","version":1})"), LoadError);
  EXPECT_THROW(load_ngram("/nonexistent/model.json"), LoadError);
}

TEST(Backend, GreedyGenerationOnToyCorpus) {
  auto model = std::make_shared<const NgramModel>(
      train_ngram(read_corpus(test::asset("fixtures/toy_corpus.txt")), 3, 0.01));
  SamplingGenerator generator(std::make_shared<NgramBackend>(model));
  GenerationParams params;
  params.top_k = 1;
  Rng rng(0);
  const auto seed = affect::SeedText::make("You are", "glad");
  const auto raw = generator.generate(seed, params, rng);
  EXPECT_EQ(raw.text, "You are glad and the light is kind to you.");
  EXPECT_TRUE(raw.complete);
  EXPECT_EQ(generator.identity(), "ngram(order=3, vocab=" + std::to_string(model->vocab_size()) + ")");
}

TEST(Backend, DecodeJoinsWordsAndLines) {
  auto model = std::make_shared<const NgramModel>(train_ngram(std::vector<std::string>{"a\nb"}, 2, 0.1));
  NgramBackend backend(model);
  const auto a = model->token_id("a"), nl = model->token_id("\n"), b = model->token_id("b");
  EXPECT_EQ(backend.decode(Seq{a, nl, b}), " a\nb");
  EXPECT_EQ(backend.begin("a zzz"), (Seq{NgramModel::kBeginOfText, a, NgramModel::kUnknown}));
}

}  // namespace
}  // namespace mirror::poet
