#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "aolab/error.hpp"
#include "aolab/sequence.hpp"

namespace aolab {
namespace {

TEST(WindowRule, ConstantTailConverges) {
  std::vector<double> s(100, 3.0);
  s[0] = 100.0;
  const auto v = window_rule(s, 50, 1e-6);
  EXPECT_TRUE(v.convergent);
  EXPECT_DOUBLE_EQ(v.limit, 3.0);
  EXPECT_EQ(v.max_deviation, 0.0);
}

TEST(WindowRule, ToleranceIsRelativeAboveOne) {
  std::vector<double> s(60, 1000.0);
  s.back() = 1000.0 + 5e-4;  // deviation ~4.9e-4 <= 1e-6 * 1000
  EXPECT_TRUE(window_rule(s, 50, 1e-6).convergent);
  s.back() = 1000.0 + 2e-3;
  EXPECT_FALSE(window_rule(s, 50, 1e-6).convergent);
}

TEST(WindowRule, AlternatingSequenceDoesNotConverge) {
  std::vector<double> s;
  for (int n = 0; n < 200; ++n) s.push_back(n % 2 == 0 ? 1.0 : 0.0);
  const auto v = window_rule(s, 50, 1e-6);
  EXPECT_FALSE(v.convergent);
  EXPECT_DOUBLE_EQ(v.limit, 0.5);
  EXPECT_DOUBLE_EQ(v.max_deviation, 0.5);
}

TEST(WindowRule, ShortInputIsRejected) {
  std::vector<double> s(10, 1.0);
  EXPECT_THROW(window_rule(s, 50, 1e-6), Error);
}

TEST(LeaderClusters, GroupsWithinRadius) {
  const std::vector<double> v{0.0, 1.0, -1.0, 1e-7, 1.0 - 1e-7, 0.5};
  const auto c = leader_clusters(v, 1e-6);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_NEAR(c[0], -1.0, 1e-15);
  EXPECT_NEAR(c[1], 5e-8, 1e-15);
  EXPECT_NEAR(c[2], 0.5, 1e-15);
  EXPECT_NEAR(c[3], 1.0 - 5e-8, 1e-15);
}

TEST(Regression, SlopeOfLine) {
  std::vector<double> x, y;
  for (int i = 1; i <= 20; ++i) {
    x.push_back(i);
    y.push_back(2.5 * i - 7.0);
  }
  EXPECT_NEAR(regression_slope(x, y), 2.5, 1e-12);
}

TEST(Regression, LogTermIsSeparatedFromSlope) {
  std::vector<double> x, y;
  for (int n = 1000; n <= 2000; ++n) {
    x.push_back(n);
    y.push_back(1.0 + std::log(0.7) * n + 3.0 * std::log(static_cast<double>(n)));
  }
  EXPECT_NEAR(regression_slope_with_log(x, y), std::log(0.7), 1e-9);
}

TEST(AnalysisConfig, Validation) {
  AnalysisConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.window = cfg.n_max;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.tol_conv = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.tol_rank = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
}

}  // namespace
}  // namespace aolab
