// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/poet/poem.hpp"

#include <optional>

#include "mirror/error.hpp"

namespace mirror::poet {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Length of a closing quote or bracket at text[i], 0 if there is none.
std::size_t closer_length(std::string_view text, std::size_t i) {
  const char c = text[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') return 1;
  // UTF-8 right single and double quotation marks.
  if (text.substr(i, 3) == "\xE2\x80\x99" || text.substr(i, 3) == "\xE2\x80\x9D") return 3;
  return 0;
}

// End of the sentence whose terminal mark is at index, or nullopt.
std::optional<std::size_t> sentence_end(std::string_view text, std::size_t index) {
  if (index >= text.size() || !is_terminal(text[index])) return std::nullopt;
  std::size_t end = index + 1;
  while (end < text.size()) {
    const auto n = closer_length(text, end);
    if (n == 0) break;
    end += n;
  }
  if (end < text.size() && !is_space(text[end])) return std::nullopt;
  return end;
}

std::string_view rstrip(std::string_view text) {
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

}  // namespace

std::string_view to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::too_short: return "too_short";
    case RejectionReason::missing_seed: return "missing_seed";
    case RejectionReason::seed_too_long: return "seed_too_long";
  }
  return "unknown";
}

int count_words(std::string_view text) {
  int words = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

bool ends_sentence_at(std::string_view text, std::size_t index) {
  return sentence_end(text, index).has_value();
}

std::string trim_text(std::string_view raw, std::size_t seed_length, int max_words,
                      bool may_be_truncated) {
  std::string_view text = raw;

  int words = 0;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_space(text[i])) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      if (++words > max_words) {
        text = text.substr(0, i);
        may_be_truncated = true;
        break;
      }
    }
  }

  std::optional<std::size_t> cut;
  for (std::size_t i = text.size(); i-- > seed_length;) {
    if (auto end = sentence_end(text, i)) {
      cut = *end;
      break;
    }
  }
  if (!cut && may_be_truncated) {
    const auto nl = text.rfind('\n');
    if (nl != std::string_view::npos && nl >= seed_length) cut = nl;
  }
  if (cut) text = text.substr(0, *cut);
  return std::string(rstrip(text));
}

TrimResult trim_and_validate(std::string_view raw, const affect::SeedText& seed,
                             const GenerationParams& params, bool complete) {
  const int seed_words = count_words(seed.text);
  if (seed_words > params.max_words) {
    return Rejection{RejectionReason::seed_too_long,
                     "seed has " + std::to_string(seed_words) + " words, limit " +
                         std::to_string(params.max_words)};
  }
  if (!raw.starts_with(seed.text)) {
    return Rejection{RejectionReason::missing_seed, "text does not start with the seed"};
  }
  auto body = trim_text(raw, seed.text.size(), params.max_words, !complete);
  const int words = count_words(body);
  if (words < params.min_words) {
    return Rejection{RejectionReason::too_short,
                     std::to_string(words) + " words, minimum " +
                         std::to_string(params.min_words)};
  }
  Poem poem;
  poem.seed = seed;
  poem.body = std::move(body);
  poem.word_count = words;
  poem.created_at = std::chrono::system_clock::now();
  poem.params = params;
  poem.attempts = 1;
  return poem;
}

Poem make_poem(const PoemGenerator& generator, const affect::SeedText& seed,
               const GenerationParams& params, Rng& rng, std::string_view fallback_line) {
  params.validate();
  std::optional<Rejection> last_rejection;
  std::string last_error;
  for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
    RawText raw;
    try {
      raw = generator.generate(seed, params, rng);
    } catch (const GenerationError& e) {
      last_error = e.what();
      continue;
    }
    auto result = trim_and_validate(raw.text, seed, params, raw.complete);
    if (auto* poem = std::get_if<Poem>(&result)) {
      poem->attempts = attempt;
      return std::move(*poem);
    }
    last_rejection = std::get<Rejection>(std::move(result));
  }
  if (!last_rejection) {
    throw GenerationError("all " + std::to_string(params.max_attempts) +
                          " attempts failed; last: " + last_error);
  }
  Poem poem;
  poem.seed = seed;
  poem.body = seed.text;
  if (!fallback_line.empty()) {
    poem.body += '\n';
    poem.body += fallback_line;
  }
  poem.word_count = count_words(poem.body);
  poem.created_at = std::chrono::system_clock::now();
  poem.params = params;
  poem.fallback = true;
  poem.attempts = params.max_attempts;
  return poem;
}

}  // namespace mirror::poet
