// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mirror/affect/lexicon.hpp"
#include "mirror/poet/params.hpp"
#include "mirror/poet/sampling.hpp"
#include "mirror/random.hpp"

namespace mirror::poet {

/// A next-token model with a fixed vocabulary that includes end-of-text.
class TokenBackend {
 public:
  using Context = std::vector<TokenId>;

  virtual ~TokenBackend() = default;

  virtual Context begin(std::string_view seed_text) const = 0;
  /// One score per vocabulary entry; -infinity marks impossible tokens.
  virtual std::vector<double> next_logits(const Context& context) const = 0;
  virtual void append(Context& context, TokenId token) const { context.push_back(token); }
  /// Text of generated tokens as it follows the seed (leading separator included).
  virtual std::string decode(std::span<const TokenId> tokens) const = 0;

  virtual std::size_t vocab_size() const = 0;
  virtual TokenId end_of_text() const = 0;
  virtual std::string identity() const = 0;
};

/// Untrimmed generator output.
struct RawText {
  std::string text;
  /// True when generation stopped at end-of-text rather than a budget or an
  /// external length limit; the final line is then known to be complete.
  bool complete = false;
};

/// Samples from `backend` starting at the seed until end-of-text or the
/// token budget. Backend exceptions are rethrown as GenerationError tagged
/// with the backend identity.
RawText generate_raw(const TokenBackend& backend, const affect::SeedText& seed,
                     const GenerationParams& params, Rng& rng);

/// Any source of raw poem text (local sampler, remote service).
class PoemGenerator {
 public:
  virtual ~PoemGenerator() = default;
  virtual RawText generate(const affect::SeedText& seed, const GenerationParams& params,
                           Rng& rng) const = 0;
  virtual std::string identity() const = 0;
};

class SamplingGenerator final : public PoemGenerator {
 public:
  explicit SamplingGenerator(std::shared_ptr<const TokenBackend> backend);

  RawText generate(const affect::SeedText& seed, const GenerationParams& params,
                   Rng& rng) const override;
  std::string identity() const override { return backend_->identity(); }

 private:
  std::shared_ptr<const TokenBackend> backend_;
};

}  // namespace mirror::poet
