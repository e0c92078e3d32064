// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mirror/poet/generator.hpp"

namespace mirror::poet {

inline constexpr std::string_view kEndOfTextToken = "<eot>";
inline constexpr std::string_view kNewlineToken = "\n";

/// Words are maximal runs of non-whitespace; every '\n' is its own token so
/// line breaks survive generation. Other whitespace only separates words.
std::vector<std::string> tokenize(std::string_view text);

/// Splits corpus text into documents at lines consisting of exactly "%%".
/// Blank documents are dropped.
std::vector<std::string> split_corpus(std::string_view text);
std::vector<std::string> read_corpus(const std::filesystem::path& path);

/// Additively smoothed n-gram counts with backoff to shorter contexts.
///
/// Vocabulary id 0 is end-of-text. Each document is counted as
/// <begin> w1 .. wn <eot>; contexts never cross a document boundary.
class NgramModel {
 public:
  static constexpr TokenId kBeginOfText = 0xFFFFFFFEu;
  static constexpr TokenId kUnknown = 0xFFFFFFFFu;

  struct Successors {
    std::uint64_t total = 0;
    std::unordered_map<TokenId, std::uint64_t> counts;
  };

  struct ContextHash {
    std::size_t operator()(const std::vector<TokenId>& ctx) const noexcept;
  };
  using Table = std::unordered_map<std::vector<TokenId>, Successors, ContextHash>;

  /// vocabulary[0] must be the end-of-text token. Throws ConfigError on
  /// invalid order/alpha or counts that reference unknown ids.
  NgramModel(int order, double alpha, std::vector<std::string> vocabulary, Table table);

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  std::size_t vocab_size() const { return vocabulary_.size(); }
  const Table& table() const { return table_; }

  TokenId token_id(std::string_view word) const;
  std::uint64_t count(std::span<const TokenId> context, TokenId next) const;

  /// Log of the smoothed conditional distribution given the last order-1
  /// tokens, backing off to shorter contexts when one was never observed.
  /// With nothing observed at any length the distribution is uniform.
  std::vector<double> next_logits(std::span<const TokenId> context) const;

  /// Length of the context suffix next_logits uses; nullopt means uniform.
  std::optional<std::size_t> backoff_length(std::span<const TokenId> context) const;

 private:
  int order_;
  double alpha_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, TokenId> ids_;
  Table table_;
};

/// Throws ConfigError when the corpus has no tokens, order < 2 or alpha < 0.
NgramModel train_ngram(std::span<const std::string> documents, int order = 3,
                       double alpha = 0.01);

std::string serialize_ngram(const NgramModel& model);
NgramModel parse_ngram(std::string_view json_text);
void save_ngram(const std::filesystem::path& path, const NgramModel& model);
NgramModel load_ngram(const std::filesystem::path& path);

class NgramBackend final : public TokenBackend {
 public:
  explicit NgramBackend(std::shared_ptr<const NgramModel> model);

  Context begin(std::string_view seed_text) const override;
  std::vector<double> next_logits(const Context& context) const override;
  std::string decode(std::span<const TokenId> tokens) const override;
  std::size_t vocab_size() const override { return model_->vocab_size(); }
  TokenId end_of_text() const override { return 0; }
  std::string identity() const override;

  const NgramModel& model() const { return *model_; }

 private:
  std::shared_ptr<const NgramModel> model_;
};

}  // namespace mirror::poet
