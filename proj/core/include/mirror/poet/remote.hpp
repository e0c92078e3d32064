// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>

#include "mirror/poet/generator.hpp"

namespace mirror::poet {

/// A text-generation service reachable over HTTP.
///
/// Request:  POST <url>  {"seed_text", "max_words", "temperature", "top_k"}
/// Response: 200 {"text": "<seed text and continuation>"}
struct RemoteEndpoint {
  std::string url;  ///< e.g. http://127.0.0.1:8765/generate
  std::chrono::milliseconds timeout{5000};
};

/// Throws GenerationError on timeout, transport failure, non-200 status or a
/// response without a non-empty "text" string.
std::string remote_generate(const RemoteEndpoint& endpoint, const affect::SeedText& seed,
                            const GenerationParams& params);

class RemoteGenerator final : public PoemGenerator {
 public:
  explicit RemoteGenerator(RemoteEndpoint endpoint);

  RawText generate(const affect::SeedText& seed, const GenerationParams& params,
                   Rng& rng) const override;
  std::string identity() const override;

 private:
  RemoteEndpoint endpoint_;
};

}  // namespace mirror::poet
