// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "mirror/error.hpp"
#include "mirror/metrics/stats.hpp"
#include "oracles.hpp"

namespace mirror::metrics {
namespace {

TEST(MeanSd, KnownValues) {
  const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
  const auto m = mean_sd(x);
  EXPECT_DOUBLE_EQ(m.mean, 5.0);
  EXPECT_NEAR(m.sd, std::sqrt(32.0 / 7.0), 1e-12);
  EXPECT_THROW(mean_sd(std::vector<double>{1.0}), StatsError);
  EXPECT_THROW(mean(std::vector<double>{}), StatsError);
}

TEST(FiveNumber, TukeyHinges) {
  const std::vector<double> odd{7, 1, 3, 5, 9};
  auto s = five_number_summary(odd);
  EXPECT_EQ(s.n, 5u);
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.q1, 3);
  EXPECT_DOUBLE_EQ(s.median, 5);
  EXPECT_DOUBLE_EQ(s.q3, 7);
  EXPECT_DOUBLE_EQ(s.max, 9);
  const std::vector<double> even{1, 2, 3, 4, 5, 6};
  s = five_number_summary(even);
  EXPECT_DOUBLE_EQ(s.q1, 2);
  EXPECT_DOUBLE_EQ(s.median, 3.5);
  EXPECT_DOUBLE_EQ(s.q3, 5);
  const auto single = five_number_summary(std::vector<double>{4});
  EXPECT_FALSE(single.sd);
  EXPECT_DOUBLE_EQ(single.q1, 4);
}

TEST(FiveNumber, OrderedAndBoundedOnRandomSamples) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(1 + uniform_index(rng, 30));
    for (auto& v : x) v = static_cast<double>(1 + uniform_index(rng, 5));
    const auto s = five_number_summary(x);
    ASSERT_LE(s.min, s.q1);
    ASSERT_LE(s.q1, s.median);
    ASSERT_LE(s.median, s.q3);
    ASSERT_LE(s.q3, s.max);
    ASSERT_EQ(s.min, *std::min_element(x.begin(), x.end()));
    ASSERT_NEAR(s.mean, mean(x), 1e-12);
  }
}

TEST(Pearson, KnownValuesAndErrors) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 5, 4, 5};
  EXPECT_NEAR(pearson_r(x, y), 0.7745966692, 1e-9);
  const std::vector<double> neg{5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(pearson_r(x, neg), -1.0);
  EXPECT_THROW(pearson_r(x, std::vector<double>{1, 2}), StatsError);
  EXPECT_THROW(pearson_r(std::vector<double>{1, 2}, std::vector<double>{1, 2}), StatsError);
  EXPECT_THROW(pearson_r(x, std::vector<double>(5, 3.0)), StatsError);
}

TEST(Pearson, BoundedSymmetricAndAffineInvariant) {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(3 + uniform_index(rng, 20)), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = static_cast<double>(i % 2) + uniform_unit(rng);
      y[i] = uniform_unit(rng) * 10;
    }
    const double r = pearson_r(x, y);
    ASSERT_LE(std::fabs(r), 1.0);
    ASSERT_NEAR(pearson_r(y, x), r, 1e-12);
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = 3.0 * x[i] - 7.0;
    ASSERT_NEAR(pearson_r(z, y), r, 1e-9);
  }
}

TEST(IncompleteBeta, KnownValues) {
  EXPECT_DOUBLE_EQ(regularized_incomplete_beta(2, 3, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(regularized_incomplete_beta(2, 3, 1.0), 1.0);
  // I_x(1, 1) = x and I_x(a, 1) = x^a.
  EXPECT_NEAR(regularized_incomplete_beta(1, 1, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(2.5, 1, 0.4), std::pow(0.4, 2.5), 1e-13);
  // Symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
  EXPECT_NEAR(regularized_incomplete_beta(3, 7, 0.2), 1 - regularized_incomplete_beta(7, 3, 0.8), 1e-14);
}

TEST(StudentT, SymmetricAndCauchyClosedForm) {
  EXPECT_DOUBLE_EQ(student_t_cdf(0.0, 5), 0.5);
  EXPECT_NEAR(student_t_cdf(1.3, 7) + student_t_cdf(-1.3, 7), 1.0, 1e-14);
  // One degree of freedom is the Cauchy distribution.
  EXPECT_NEAR(student_t_cdf(2.0, 1), 0.5 + std::atan(2.0) / M_PI, 1e-12);
}

TEST(PValue, AnchorAgainstIntegrationOracle) {
  const double p = p_value_r(0.81, 15);
  EXPECT_LT(p, 0.001);
  EXPECT_NEAR(p, test::oracle_p_value_r(0.81, 15), 1e-5);
  EXPECT_NEAR(p, 2.5164e-4, 1e-7);
}

TEST(PValue, MatchesOracleAcrossRange) {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const double r = 1.9 * uniform_unit(rng) - 0.95;
    const std::size_t n = 4 + uniform_index(rng, 60);
    EXPECT_NEAR(p_value_r(r, n), test::oracle_p_value_r(r, n, 20000), 1e-7) << r << " " << n;
  }
  EXPECT_DOUBLE_EQ(p_value_r(0.0, 10), 1.0);
  EXPECT_DOUBLE_EQ(p_value_r(1.0, 10), 0.0);
  EXPECT_THROW(p_value_r(0.5, 2), StatsError);
}

TEST(PValue, MonotoneInStrength) {
  double previous = 1.1;
  for (double r = 0.0; r < 0.99; r += 0.05) {
    const double p = p_value_r(r, 15);
    EXPECT_LT(p, previous);
    previous = p;
  }
}

}  // namespace
}  // namespace mirror::metrics
