#pragma once

// Decay of the distance to the Haar moment under brickwork layers applied
// after a diagonal design on |+>^n.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tdesign/rational.hpp"

namespace tdesign {

enum class DecayMode {
  /// Average over the diagonal design exactly and sample only the brickwork
  /// circuits (t = 2).
  kDesignAverage,
  /// Sample the diagonal phases together with the circuits (any t).
  kSampledStates,
};

struct DecayConfig {
  int n = 3;
  int t = 2;
  int max_T = 10;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  DecayMode mode = DecayMode::kDesignAverage;
  int batches = 10;
  int bootstrap_resamples = 200;
};

struct DecayPoint {
  int T = 0;
  double distance = 0;
  /// Bootstrap over sample batches, linearised around the full estimate.
  double std_error = 0;
  /// Half the trace distance between the two half-sample estimates.
  double noise_floor = 0;
  bool in_fit = false;
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares of y on x; needs at least two distinct x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DecayResult {
  int n = 0;
  int t = 0;
  std::size_t samples = 0;
  Rational eta;
  std::vector<DecayPoint> points;
  /// Fit of log2 D(T) = intercept - T / alpha over the leading points that
  /// clear both 3 standard errors and 3 noise floors. Valid with at least two
  /// such points and a negative slope; alpha and intercept are NaN below two
  /// points and r_squared is NaN below three.
  bool fit_valid = false;
  std::size_t fit_points = 0;
  double alpha = 0;
  double intercept = 0;
  double r_squared = 0;
};

DecayResult decay_experiment(const DecayConfig& config);

}  // namespace tdesign
