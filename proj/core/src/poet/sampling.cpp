// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/poet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mirror/error.hpp"

namespace mirror::poet {
namespace {

double rank_score(double v) {
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

}  // namespace

std::vector<TokenId> top_k_candidates(std::span<const double> logits, int top_k) {
  if (top_k < 1) throw std::invalid_argument("top_k must be at least 1");
  std::vector<TokenId> ids(logits.size());
  std::iota(ids.begin(), ids.end(), TokenId{0});
  const auto keep = std::min(ids.size(), static_cast<std::size_t>(top_k));
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep), ids.end(),
                    [&](TokenId a, TokenId b) {
                      const double sa = rank_score(logits[a]), sb = rank_score(logits[b]);
                      return sa > sb || (sa == sb && a < b);
                    });
  ids.resize(keep);
  return ids;
}

TokenId sample_token(std::span<const double> logits, double temperature, int top_k, Rng& rng) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive and finite");
  }
  if (logits.empty()) throw GenerationError("sampling: empty vocabulary");
  const auto kept = top_k_candidates(logits, top_k);
  const double best = rank_score(logits[kept.front()]);
  if (best == -std::numeric_limits<double>::infinity()) {
    throw GenerationError("sampling: every logit is -infinity");
  }
  if (best == std::numeric_limits<double>::infinity()) return kept.front();

  std::vector<double> weights(kept.size());
  double total = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const double l = rank_score(logits[kept[i]]);
    weights[i] = std::exp((l - best) / temperature);
    total += weights[i];
  }
  const double u = uniform_unit(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    acc += weights[i];
    if (u < acc) return kept[i];
  }
  // Rounding can leave u == total; take the last kept token with mass.
  for (std::size_t i = kept.size(); i-- > 0;) {
    if (weights[i] > 0.0) return kept[i];
  }
  return kept.front();
}

}  // namespace mirror::poet
