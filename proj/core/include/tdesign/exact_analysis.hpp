#pragma once

// Closed-form distances between the Haar state moment and the phase-random
// state moment, evaluated exactly by grouping classes by their collision
// pattern. The cost depends on the number of integer partitions of t, not on
// d = 2^n.

#include <cstddef>
#include <string>
#include <vector>

#include "tdesign/rational.hpp"

namespace tdesign {

/// Largest t accepted by the pattern-based routines.
inline constexpr int kMaxPatternOrder = 40;

/// Multiplicities of the distinct strings in a tuple, as a partition of t.
struct CollisionPattern {
  /// Nonincreasing, all parts >= 1.
  std::vector<int> parts;

  int t() const;
  std::size_t part_count() const noexcept { return parts.size(); }
  std::string to_string() const;

  friend bool operator==(const CollisionPattern&, const CollisionPattern&) = default;
};

/// All partitions of t, in reverse lexicographic order starting with (t).
std::vector<CollisionPattern> partitions(int t);

/// Number of classes of t n-bit strings whose multiplicities form `pattern`:
/// C(d, l) l! / prod_j m_j!, with m_j the number of parts equal to j.
BigInt pattern_class_count(int n, int t, const CollisionPattern& pattern);

/// Size of every class with this pattern: t! / prod_i lambda_i!.
BigInt pattern_class_size(const CollisionPattern& pattern);

struct ExactDistance {
  int n = 0;
  int t = 0;
  Rational value;
};

/// eta(n, t) = sum over classes of |1/C(d+t-1, t) - |class| / d^t|.
ExactDistance eta_exact(int n, int t);

/// The same sum by enumerating every class; used as an independent check.
Rational eta_by_enumeration(int n, int t);

/// Leading-order value t(t-1)/2^n.
Rational eta_asymptotic(int n, int t);

/// One group of classes contributing count * |a + b p| to D(p).
struct MixingTerm {
  BigInt count;
  Rational a;
  Rational b;
};

/// D(p): trace distance to the Haar moment of the ensemble that applies the
/// diagonal design to |+>^n with probability p and otherwise emits a uniformly
/// random computational basis state. D is convex and piecewise linear on [0, 1].
struct MixingCurve {
  int n = 0;
  int t = 0;
  std::vector<MixingTerm> terms;
  /// Kinks inside (0, 1) together with the endpoints 0 and 1, increasing.
  std::vector<Rational> breakpoints;
  /// slopes[k] is the slope on (breakpoints[k], breakpoints[k+1]).
  std::vector<Rational> slopes;
  /// Smallest minimiser of D over [0, 1].
  Rational p_star;
  Rational d_at_p_star;
  Rational d_at_one;

  Rational evaluate(const Rational& p) const;
};

MixingCurve mixing_curve(int n, int t);

/// (1 - d / C(t+d-1, t)) / (1 - d^(1-t)); requires t >= 2.
Rational closed_form_p_star(int n, int t);

/// Number of local layers needed to reach distance epsilon assuming
/// D(T) = eta 2^(-T/alpha): zero once epsilon >= eta(n, t), otherwise
/// alpha (log2(1/epsilon) - n + log2(t(t-1))) floored at zero.
double required_length(double epsilon, int n, int t, double alpha);

}  // namespace tdesign
