// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mirror/random.hpp"

namespace mirror::poet {

using TokenId = std::uint32_t;

/// The k highest logits, ordered by score descending then id ascending.
/// Temperature scaling by a positive constant never changes this set.
std::vector<TokenId> top_k_candidates(std::span<const double> logits, int top_k);

/// Temperature + top-k sampling: logits / temperature, keep the top_k, softmax
/// over the kept set, draw one. Throws GenerationError when every logit is
/// -infinity (or NaN), std::invalid_argument for a bad temperature or top_k.
TokenId sample_token(std::span<const double> logits, double temperature, int top_k, Rng& rng);

}  // namespace mirror::poet
