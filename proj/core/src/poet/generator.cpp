// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/poet/generator.hpp"

#include "mirror/error.hpp"

namespace mirror::poet {

RawText generate_raw(const TokenBackend& backend, const affect::SeedText& seed,
                     const GenerationParams& params, Rng& rng) {
  try {
    auto context = backend.begin(seed.text);
    std::vector<TokenId> produced;
    const auto budget = static_cast<std::size_t>(params.token_budget());
    bool complete = false;
    while (produced.size() < budget) {
      const auto logits = backend.next_logits(context);
      const TokenId token = sample_token(logits, params.temperature, params.top_k, rng);
      if (token == backend.end_of_text()) {
        complete = true;
        break;
      }
      backend.append(context, token);
      produced.push_back(token);
    }
    return {seed.text + backend.decode(produced), complete};
  } catch (const std::exception& e) {
    throw GenerationError(backend.identity() + ": " + e.what());
  }
}

SamplingGenerator::SamplingGenerator(std::shared_ptr<const TokenBackend> backend)
    : backend_(std::move(backend)) {
  if (!backend_) throw ConfigError("sampling generator needs a backend");
}

RawText SamplingGenerator::generate(const affect::SeedText& seed, const GenerationParams& params,
                                    Rng& rng) const {
  return generate_raw(*backend_, seed, params, rng);
}

}  // namespace mirror::poet
