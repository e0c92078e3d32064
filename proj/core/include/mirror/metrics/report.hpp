// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mirror/metrics/questionnaire.hpp"
#include "mirror/metrics/stats.hpp"

namespace mirror::metrics {

struct QuestionStats {
  int question;
  DescriptiveStats stats;
};

struct ComponentStats {
  Component component;
  std::vector<int> questions;
  /// Pooled answers of the assigned questions; unset when none are assigned.
  std::optional<DescriptiveStats> stats;
  /// All three questions assigned.
  bool complete = false;
};

struct ComponentReport {
  std::size_t participants = 0;
  std::vector<QuestionStats> questions;
  std::vector<ComponentStats> components;
};

/// Validates every response first. Throws ConfigError for an invalid
/// response and StatsError when there are no responses.
ComponentReport component_report(std::span<const QuestionnaireResponse> responses,
                                 const ComponentMap& map);

struct CorrelationCell {
  /// Unset when either question has constant answers.
  std::optional<double> r;
  std::optional<double> p;
};

struct CorrelationMatrix {
  std::array<std::array<CorrelationCell, kQuestionCount>, kQuestionCount> cells{};
  std::array<bool, kQuestionCount> constant{};

  const CorrelationCell& at(int qa, int qb) const { return cells.at(qa - 1).at(qb - 1); }
};

/// Throws StatsError for fewer than three participants.
CorrelationMatrix correlation_matrix(std::span<const QuestionnaireResponse> responses);

struct CorrelationPair {
  int a;
  int b;
  double r;
  double p;
};

/// Off-diagonal pairs (a < b) by descending |r|.
std::vector<CorrelationPair> strongest_correlations(const CorrelationMatrix& m, std::size_t count);

/// Human-readable report, two decimals, e.g. "Q5 mean 4.07 sd 0.70 ...".
std::string format_report(const ComponentReport& report, const CorrelationMatrix* correlations);

/// Full-precision machine-readable summary.
std::string report_json(const ComponentReport& report, const CorrelationMatrix* correlations);

}  // namespace mirror::metrics
