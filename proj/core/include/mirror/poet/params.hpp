// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace mirror::poet {

/// Sampling and length limits for one poem. Lengths count words.
struct GenerationParams {
  int max_words = 80;
  int min_words = 5;
  double temperature = 0.8;
  int top_k = 40;
  int max_attempts = 3;

  /// Throws ConfigError when a limit is out of range.
  void validate() const;

  /// Hard cap on sampled tokens per attempt.
  int token_budget() const { return 4 * max_words; }

  friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

}  // namespace mirror::poet
