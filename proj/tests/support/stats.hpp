#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace tdesign::testing {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

/// Asymptotic Kolmogorov tail Q(λ) = 2 Σ (-1)^(k-1) exp(-2 k² λ²).
inline double kolmogorov_tail(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// p-value of the two-sample statistic with Stephens' small-sample correction.
inline double ks_pvalue(double statistic, std::size_t na, std::size_t nb) {
  const double ne = static_cast<double>(na) * static_cast<double>(nb) / static_cast<double>(na + nb);
  const double root = std::sqrt(ne);
  return kolmogorov_tail((root + 0.12 + 0.11 / root) * statistic);
}

inline double ks_two_sample_pvalue(const std::vector<double>& a, const std::vector<double>& b) {
  return ks_pvalue(ks_statistic(a, b), a.size(), b.size());
}

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanAndError mean_and_error(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / (n - 1.0) / n)};
}

}  // namespace tdesign::testing
