#include "tdesign/exact_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tdesign/bitseq.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/moments.hpp"

namespace tdesign {
namespace {

void check_pattern_order(int t) {
  require(t >= 1 && t <= kMaxPatternOrder,
          "t must lie in [1, " + std::to_string(kMaxPatternOrder) + "], got " + std::to_string(t));
}

void partitions_into(int remaining, int largest, std::vector<int>& prefix,
                     std::vector<CollisionPattern>& out) {
  if (remaining == 0) {
    out.push_back(CollisionPattern{prefix});
    return;
  }
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

Rational abs_rational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

int CollisionPattern::t() const {
  int sum = 0;
  for (int p : parts) sum += p;
  return sum;
}

std::string CollisionPattern::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(parts[k]);
  }
  return out + ")";
}

std::vector<CollisionPattern> partitions(int t) {
  check_pattern_order(t);
  std::vector<CollisionPattern> out;
  std::vector<int> prefix;
  partitions_into(t, t, prefix, out);
  return out;
}

BigInt pattern_class_size(const CollisionPattern& pattern) {
  BigInt size = factorial(static_cast<unsigned long>(pattern.t()));
  for (int p : pattern.parts) size /= factorial(static_cast<unsigned long>(p));
  return size;
}

BigInt pattern_class_count(int n, int t, const CollisionPattern& pattern) {
  check_qubits(n);
  require(pattern.t() == t, "pattern " + pattern.to_string() + " is not a partition of " + std::to_string(t));
  for (std::size_t k = 0; k < pattern.parts.size(); ++k) {
    require(pattern.parts[k] >= 1 && (k == 0 || pattern.parts[k] <= pattern.parts[k - 1]),
            "pattern parts must be positive and nonincreasing");
  }
  const auto l = static_cast<unsigned long>(pattern.part_count());
  // Choose which l strings occur, then assign them to parts up to swaps of
  // equal parts.
  BigInt count = binomial(pow2(static_cast<unsigned long>(n)), l) * factorial(l);
  std::map<int, unsigned long> multiplicity;
  for (int p : pattern.parts) ++multiplicity[p];
  for (const auto& [part, m] : multiplicity) count /= factorial(m);
  return count;
}

ExactDistance eta_exact(int n, int t) {
  check_qubits(n);
  check_pattern_order(t);
  const auto d = pow2(static_cast<unsigned long>(n));
  const Rational haar(BigInt(1), binomial(d + (t - 1), static_cast<unsigned long>(t)));
  const auto dt = power(d, static_cast<unsigned long>(t));
  Rational sum = 0;
  for (const auto& pattern : partitions(t)) {
    Rational phase(pattern_class_size(pattern), dt);
    phase.canonicalize();
    sum += Rational(pattern_class_count(n, t, pattern)) * abs_rational(haar - phase);
  }
  return ExactDistance{n, t, sum};
}

Rational eta_by_enumeration(int n, int t) {
  return diagonal_trace_distance(haar_state_moment(n, t), phase_random_state_moment(n, t));
}

Rational eta_asymptotic(int n, int t) {
  check_qubits(n);
  require(t >= 1, "t must be positive");
  Rational out(BigInt(t) * BigInt(t - 1), pow2(static_cast<unsigned long>(n)));
  out.canonicalize();
  return out;
}

Rational MixingCurve::evaluate(const Rational& p) const {
  Rational sum = 0;
  for (const auto& term : terms) sum += Rational(term.count) * abs_rational(term.a + term.b * p);
  return sum;
}

MixingCurve mixing_curve(int n, int t) {
  check_qubits(n);
  check_pattern_order(t);
  const auto d = pow2(static_cast<unsigned long>(n));
  const Rational haar(BigInt(1), binomial(d + (t - 1), static_cast<unsigned long>(t)));
  const auto dt = power(d, static_cast<unsigned long>(t));
  const Rational inv_d(BigInt(1), d);
  const Rational inv_dt(BigInt(1), dt);

  MixingCurve curve;
  curve.n = n;
  curve.t = t;
  for (const auto& pattern : partitions(t)) {
    MixingTerm term{pattern_class_count(n, t, pattern), haar, 0};
    if (term.count == 0) continue;
    if (pattern.part_count() == 1) {
      // (x, ..., x): the basis-state branch puts weight 1/d here.
      term.a = haar - inv_d;
      term.b = inv_d - inv_dt;
    } else {
      term.b = -Rational(pattern_class_size(pattern)) * inv_dt;
    }
    curve.terms.push_back(std::move(term));
  }

  curve.breakpoints = {Rational(0), Rational(1)};
  for (const auto& term : curve.terms) {
    if (term.b == 0) continue;
    const Rational kink = -term.a / term.b;
    if (kink > 0 && kink < 1) curve.breakpoints.push_back(kink);
  }
  std::sort(curve.breakpoints.begin(), curve.breakpoints.end());
  curve.breakpoints.erase(std::unique(curve.breakpoints.begin(), curve.breakpoints.end()),
                          curve.breakpoints.end());

  for (std::size_t k = 0; k + 1 < curve.breakpoints.size(); ++k) {
    const Rational mid = (curve.breakpoints[k] + curve.breakpoints[k + 1]) / 2;
    Rational slope = 0;
    for (const auto& term : curve.terms) {
      const Rational value = term.a + term.b * mid;
      if (value > 0) slope += Rational(term.count) * term.b;
      if (value < 0) slope -= Rational(term.count) * term.b;
    }
    curve.slopes.push_back(slope);
  }

  // Convexity: the minimum sits at the first breakpoint after which the slope
  // stops being negative.
  std::size_t best = 0;
  while (best < curve.slopes.size() && curve.slopes[best] < 0) ++best;
  curve.p_star = curve.breakpoints[best];
  curve.d_at_p_star = curve.evaluate(curve.p_star);
  curve.d_at_one = curve.evaluate(Rational(1));
  return curve;
}

Rational closed_form_p_star(int n, int t) {
  check_qubits(n);
  require(t >= 2, "the closed-form minimiser needs t >= 2");
  const auto d = pow2(static_cast<unsigned long>(n));
  const Rational d_over_c(d, binomial(d + (t - 1), static_cast<unsigned long>(t)));
  const Rational d_pow(BigInt(1), power(d, static_cast<unsigned long>(t - 1)));
  Rational out = (Rational(1) - d_over_c) / (Rational(1) - d_pow);
  out.canonicalize();
  return out;
}

double required_length(double epsilon, int n, int t, double alpha) {
  require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be positive");
  require(std::isfinite(alpha) && alpha > 0, "alpha must be positive");
  check_qubits(n);
  require(t >= 1, "t must be positive");
  if (epsilon >= to_double(eta_exact(n, t).value)) return 0.0;
  const double tt = static_cast<double>(t) * static_cast<double>(t - 1);
  const double length = alpha * (std::log2(1.0 / epsilon) - n + std::log2(tt));
  return std::max(length, 0.0);
}

}  // namespace tdesign
