#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tdesign/decay.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/exact_analysis.hpp"

namespace tdesign {
namespace {

DecayConfig small_config(DecayMode mode) {
  DecayConfig config;
  config.n = 3;
  config.max_T = 3;
  config.samples = 200;
  config.seed = 3;
  config.mode = mode;
  return config;
}

TEST(FitLine, RecoversExactLine) {
  const auto fit = fit_line({0, 1, 2, 3}, {5, 3, 1, -1});
  EXPECT_DOUBLE_EQ(fit.slope, -2.0);
  EXPECT_DOUBLE_EQ(fit.intercept, 5.0);
  EXPECT_DOUBLE_EQ(fit.r_squared, 1.0);
}

TEST(FitLine, ReportsResidualFraction) {
  // Residuals (+1, -2, +1) around y = 2x: ss_res = 6, ss_tot = 14.
  const auto fit = fit_line({0, 1, 2}, {1, 0, 5});
  EXPECT_DOUBLE_EQ(fit.slope, 2.0);
  EXPECT_DOUBLE_EQ(fit.r_squared, 1.0 - 6.0 / 14.0);
  EXPECT_THROW(fit_line({1}, {1}), InvalidArgument);
  EXPECT_THROW(fit_line({1, 1}, {0, 2}), InvalidArgument);
}

TEST(Decay, DesignAverageStartsAtExactDistance) {
  const auto result = decay_experiment(small_config(DecayMode::kDesignAverage));
  ASSERT_EQ(result.points.size(), 4u);
  // 8 |1/36 - 1/64| + 28 |1/36 - 2/64|.
  EXPECT_EQ(result.eta, Rational(7, 36));
  // Averaging over the diagonal design is exact, so T = 0 carries no noise.
  EXPECT_NEAR(result.points[0].distance, 7.0 / 36.0, 1e-12);
  EXPECT_LT(result.points[0].std_error, 1e-12);
  EXPECT_LT(result.points[0].noise_floor, 1e-12);
}

TEST(Decay, DistancesDecreaseAndStayInRange) {
  const auto result = decay_experiment(small_config(DecayMode::kDesignAverage));
  for (const auto& p : result.points) {
    EXPECT_GE(p.distance, 0.0);
    EXPECT_LE(p.distance, 2.0);
    EXPECT_GE(p.std_error, 0.0);
    EXPECT_GE(p.noise_floor, 0.0);
  }
  EXPECT_LT(result.points[1].distance, result.points[0].distance);
}

TEST(Decay, FitUsesLeadingPointsAboveNoise) {
  const auto result = decay_experiment(small_config(DecayMode::kDesignAverage));
  std::size_t leading = 0;
  while (leading < result.points.size() && result.points[leading].in_fit) ++leading;
  EXPECT_EQ(leading, result.fit_points);
  for (std::size_t k = leading; k < result.points.size(); ++k) EXPECT_FALSE(result.points[k].in_fit);
  for (std::size_t k = 0; k < leading; ++k) {
    const auto& p = result.points[k];
    EXPECT_GT(p.distance, 3 * p.std_error);
    EXPECT_GT(p.distance, 3 * p.noise_floor);
  }
  if (result.fit_points >= 2) {
    EXPECT_TRUE(std::isfinite(result.alpha));
  } else {
    EXPECT_TRUE(std::isnan(result.alpha));
  }
  if (result.fit_points < 3) EXPECT_TRUE(std::isnan(result.r_squared));
}

TEST(Decay, DeterministicGivenSeed) {
  const auto a = decay_experiment(small_config(DecayMode::kDesignAverage));
  const auto b = decay_experiment(small_config(DecayMode::kDesignAverage));
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    EXPECT_EQ(a.points[k].distance, b.points[k].distance);
    EXPECT_EQ(a.points[k].std_error, b.points[k].std_error);
    EXPECT_EQ(a.points[k].noise_floor, b.points[k].noise_floor);
  }
}

TEST(Decay, SampledModeAgreesWithinNoise) {
  auto config = small_config(DecayMode::kSampledStates);
  config.samples = 4000;
  config.max_T = 0;
  const auto sampled = decay_experiment(config);
  const auto& p = sampled.points[0];
  // The finite-sample estimate of a trace norm is biased upwards by about
  // the noise level.
  EXPECT_GT(p.distance, 7.0 / 36.0 - 3 * p.std_error);
  EXPECT_LT(p.distance, 7.0 / 36.0 + 3 * p.std_error + 4 * p.noise_floor);
}

TEST(Decay, SampledModeHandlesHigherMoments) {
  DecayConfig config;
  config.n = 2;
  config.t = 3;
  config.max_T = 1;
  config.samples = 100;
  config.mode = DecayMode::kSampledStates;
  const auto result = decay_experiment(config);
  EXPECT_EQ(result.points.size(), 2u);
  EXPECT_EQ(result.eta, eta_exact(2, 3).value);
}

TEST(Decay, RejectsInvalidConfigs) {
  auto config = small_config(DecayMode::kDesignAverage);
  config.t = 3;
  EXPECT_THROW(decay_experiment(config), InvalidArgument);
  config = small_config(DecayMode::kDesignAverage);
  config.batches = 3;
  EXPECT_THROW(decay_experiment(config), InvalidArgument);
  config = small_config(DecayMode::kDesignAverage);
  config.n = 1;
  EXPECT_THROW(decay_experiment(config), InvalidArgument);
  config = small_config(DecayMode::kDesignAverage);
  config.samples = 5;
  EXPECT_THROW(decay_experiment(config), InvalidArgument);
}

}  // namespace
}  // namespace tdesign
