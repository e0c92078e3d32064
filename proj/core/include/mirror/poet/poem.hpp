// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <variant>

#include "mirror/affect/lexicon.hpp"
#include "mirror/poet/generator.hpp"
#include "mirror/poet/params.hpp"

namespace mirror::poet {

inline constexpr std::string_view kDefaultFallbackLine = "and the glass keeps what you bring to it.";

struct Poem {
  affect::SeedText seed;
  /// Starts with seed.text; original line breaks preserved.
  std::string body;
  int word_count = 0;
  std::chrono::system_clock::time_point created_at{};
  GenerationParams params;
  /// Set when every attempt was rejected and the body is the fallback line.
  bool fallback = false;
  int attempts = 0;
};

enum class RejectionReason { too_short, missing_seed, seed_too_long };

std::string_view to_string(RejectionReason reason);

struct Rejection {
  RejectionReason reason;
  std::string detail;
};

using TrimResult = std::variant<Poem, Rejection>;

/// Number of maximal non-whitespace runs.
int count_words(std::string_view text);

/// True at a '.', '!' or '?' that ends a word, optionally followed by
/// closing quotes or brackets.
bool ends_sentence_at(std::string_view text, std::size_t index);

/// The trimming rules without validation:
///  1. keep at most max_words words (line breaks kept);
///  2. cut after the last sentence end located past the seed, if any;
///  3. otherwise, if the text may have been cut short, drop the trailing
///     partial line when a line break exists past the seed;
///  4. strip trailing whitespace.
std::string trim_text(std::string_view raw, std::size_t seed_length, int max_words,
                      bool may_be_truncated);

/// Trims, then rejects bodies that do not start with the seed or fall below
/// min_words. `complete` is RawText::complete of the generator output.
TrimResult trim_and_validate(std::string_view raw, const affect::SeedText& seed,
                             const GenerationParams& params, bool complete = false);

/// Generates and validates up to params.max_attempts times with the same seed.
/// If every attempt is rejected the seed plus `fallback_line` is returned with
/// fallback set. Throws GenerationError when every attempt failed outright.
Poem make_poem(const PoemGenerator& generator, const affect::SeedText& seed,
               const GenerationParams& params, Rng& rng,
               std::string_view fallback_line = kDefaultFallbackLine);

}  // namespace mirror::poet
