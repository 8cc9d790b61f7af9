#pragma once

// Exact t-th moment operators and the exact-design decision procedure.
//
// Both state moments considered here are diagonal in the orthonormal basis
// {|class>} of the symmetric subspace, so they are stored as one exact
// rational weight per permutation class. Twirl coefficients of diagonal
// ensembles are 0/1 indicators over pairs of tuples; those are kept as
// predicates and never expanded into matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdesign/bitseq.hpp"
#include "tdesign/rational.hpp"

namespace tdesign {

struct StateMomentDiagonal {
  int n = 0;
  int t = 0;
  /// Lexicographic order of representatives (the ClassEnumerator order).
  std::vector<CanonicalClass> classes;
  std::vector<Rational> weights;

  Rational trace() const;
  /// Weight of the class containing `tuple`.
  const Rational& weight_of(const BitTuple& tuple) const;
};

/// E[|psi><psi|^t] over Haar-random states: every class weighs 1/C(2^n+t-1, t).
StateMomentDiagonal haar_state_moment(int n, int t, std::uint64_t budget = kDefaultClassBudget);

/// The same moment for phase-random states from |+>^n: class weight
/// |class| / 2^(n t).
StateMomentDiagonal phase_random_state_moment(int n, int t,
                                              std::uint64_t budget = kDefaultClassBudget);

/// Trace norm of the difference of two moments sharing the class basis.
Rational diagonal_trace_distance(const StateMomentDiagonal& a, const StateMomentDiagonal& b);

/// Twirl coefficient of a diagonal ensemble, as a predicate over tuple pairs.
/// With support size r it is 1 iff the two tuples restrict to the same class on
/// every size-r position subset; r = n gives the fully random diagonal case.
class PairIndicator {
 public:
  PairIndicator(int n, int t, int support);

  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }
  int support() const noexcept { return support_; }

  bool operator()(const BitTuple& a, const BitTuple& b) const;

 private:
  int n_;
  int t_;
  int support_;
  std::vector<IndexSubset> subsets_;
};

PairIndicator diag_moment_indicator(int n, int t);
PairIndicator circuit_moment_indicator(int n, int t, int r);

struct TuplePair {
  BitTuple first;
  BitTuple second;
};

struct DesignVerdict {
  bool is_exact_design = false;
  /// Present only for non-exact verdicts: distinct classes that agree on every
  /// size-r restriction.
  std::optional<TuplePair> witness;
};

enum class DesignSearch {
  /// Hash search over all classes when no violation can be built directly;
  /// uses the explicit parity witness whenever t >= 2^r.
  kExhaustive,
  /// Hash search over all classes, never using the parity construction.
  kBlindExhaustive,
  /// Closed-form threshold; witnesses come from the parity construction.
  kThreshold,
};

/// Smallest support size r for which an r-qubit phase-random circuit is an
/// exact diagonal t-design: min(floor(log2 t) + 1, n).
int design_threshold(int n, int t);

DesignVerdict is_exact_design(int n, int t, int r, DesignSearch mode = DesignSearch::kExhaustive,
                              std::uint64_t budget = kDefaultClassBudget);

/// Smallest r in [1, n] whose verdict is exact.
int minimal_exact_r(int n, int t, DesignSearch mode = DesignSearch::kExhaustive,
                    std::uint64_t budget = kDefaultClassBudget);

/// True iff the pair lies in different classes yet every size-r restriction
/// agrees.
bool is_violating_pair(const TuplePair& pair, int r);

/// Violating pair for support r < n and t >= 2^r: on positions 1..r+1 the
/// first tuple lists every even-weight string and the second every odd-weight
/// one; all other positions are 0 and both are padded with the all-zero
/// string up to length t.
TuplePair parity_witness(int n, int t, int r);

/// g copies of every even-weight s-bit string against g copies of every
/// odd-weight one (t = 2^(s-1) g).
TuplePair parity_pair(int s, int g);

struct OccurrenceGap {
  /// The common |G_a(v) - G_b(v)| when uniform, otherwise the largest one.
  std::size_t gap = 0;
  bool uniform = false;
};

/// Compares occurrence counts of every s-bit string in two tuples.
OccurrenceGap occurrence_gap(const BitTuple& a, const BitTuple& b);

/// Every unordered pair of distinct classes of t s-bit strings whose
/// restrictions to all (s-1)-subsets agree.
std::vector<TuplePair> lemma_hypothesis_pairs(int s, int t,
                                              std::uint64_t budget = kDefaultClassBudget);

}  // namespace tdesign
