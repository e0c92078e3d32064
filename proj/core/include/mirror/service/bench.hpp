// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mirror/service/config.hpp"

namespace mirror::service {

inline constexpr double kLatencyBudgetMs = 800.0;

struct StageSummary {
  std::string stage;
  std::size_t samples = 0;
  /// Unset when the stage never ran.
  std::optional<double> p50, p90, p99;
};

struct BenchReport {
  std::size_t frames = 0;
  std::size_t runs = 0;
  /// Runs in which a face was found and a poem produced.
  std::size_t full_runs = 0;
  std::vector<StageSummary> stages;  // detect, classify, generate, total
  /// Median of detect + classify + generate over full runs (all runs when
  /// no frame contained a face).
  double total_median_ms = 0.0;
  double budget_ms = kLatencyBudgetMs;

  bool within_budget() const { return total_median_ms <= budget_ms; }
};

/// Linear interpolation between closest ranks; q in [0, 1]. Throws
/// StatsError when empty.
double percentile(std::vector<double> samples, double q);

/// *.pgm / *.ppm / *.pnm files in `dir`, sorted by name.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

/// Runs the full pipeline `repeat` times over every frame.
BenchReport run_bench(const ServiceConfig& config, const std::vector<std::filesystem::path>& frames,
                      int repeat, std::uint64_t seed);

/// One line per stage plus a total line, e.g.
/// "total     median 12.31 ms (budget 800 ms): within budget".
std::string format_bench(const BenchReport& report);

}  // namespace mirror::service
