// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace mirror::metrics {

struct MeanSd {
  double mean;
  /// Sample standard deviation (n - 1 denominator).
  double sd;
};

/// Throws StatsError when empty.
double mean(std::span<const double> samples);

/// Throws StatsError for fewer than two samples.
MeanSd mean_sd(std::span<const double> samples);

struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  /// Unset for a single sample.
  std::optional<double> sd;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Box-plot summary with Tukey hinges: each hinge is the median of its half,
/// and an odd-length sample contributes its median to both halves.
/// Throws StatsError when empty.
DescriptiveStats five_number_summary(std::span<const double> samples);

/// Product-moment correlation. Throws StatsError for unequal lengths,
/// n < 3 or a constant input.
double pearson_r(std::span<const double> x, std::span<const double> y);

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided p-value of r under the null of zero correlation, via
/// t = r * sqrt((n - 2) / (1 - r^2)) with n - 2 degrees of freedom.
/// Returns 0 for |r| = 1. Throws StatsError for n < 3 or |r| > 1.
double p_value_r(double r, std::size_t n);

}  // namespace mirror::metrics
