// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/poet/params.hpp"

#include <cmath>
#include <string>

#include "mirror/error.hpp"

namespace mirror::poet {

void GenerationParams::validate() const {
  if (min_words < 1) throw ConfigError("generation: min_words must be at least 1");
  if (max_words < min_words) {
    throw ConfigError("generation: max_words (" + std::to_string(max_words) +
                      ") is below min_words (" + std::to_string(min_words) + ")");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("generation: temperature must be positive");
  }
  if (top_k < 1) throw ConfigError("generation: top_k must be at least 1");
  if (max_attempts < 1) throw ConfigError("generation: max_attempts must be at least 1");
}

}  // namespace mirror::poet
