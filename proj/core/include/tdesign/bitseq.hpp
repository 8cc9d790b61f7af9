#pragma once

// Combinatorics of t-tuples of N-bit strings.
//
// A BitString of width N stores its bits in a machine integer whose reading is
// sum_k b_k 2^(N-k); bit position 1 is therefore the most significant bit and
// corresponds to qubit 1. A BitTuple is an ordered list of t such strings; its
// permutation class is represented by the nondecreasing arrangement of the
// entries together with the number of distinct orderings of that multiset.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdesign/rational.hpp"

namespace tdesign {

inline constexpr int kMaxQubits = 24;
/// Largest tuple length whose class sizes (at most t!) fit in 64 bits.
inline constexpr int kMaxCopies = 20;
inline constexpr std::uint64_t kDefaultClassBudget = 20'000'000;

void check_qubits(int n);

class BitString {
 public:
  BitString(std::uint32_t value, int width);
  /// Parses a string of '0'/'1' characters, most significant bit first.
  static BitString parse(std::string_view bits);

  std::uint32_t value() const noexcept { return value_; }
  int width() const noexcept { return width_; }
  /// Bit at 1-based position `position` (1 = most significant).
  int bit(int position) const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::uint32_t value_;
  int width_;
};

class BitTuple {
 public:
  BitTuple(int n, std::vector<std::uint32_t> entries);
  static BitTuple from_strings(const std::vector<std::string>& entries);
  /// Accepts "(01,00,11)" or "01,00,11".
  static BitTuple parse(std::string_view text);

  int n() const noexcept { return n_; }
  std::size_t t() const noexcept { return entries_.size(); }
  std::span<const std::uint32_t> values() const noexcept { return entries_; }
  BitString operator[](std::size_t k) const { return BitString(entries_.at(k), n_); }
  std::string to_string() const;

  friend bool operator==(const BitTuple&, const BitTuple&) = default;

 private:
  int n_;
  std::vector<std::uint32_t> entries_;
};

struct CanonicalClass {
  BitTuple representative;
  std::uint64_t class_size;

  friend bool operator==(const CanonicalClass&, const CanonicalClass&) = default;
};

/// Strictly increasing subset of {1, ..., n}.
class IndexSubset {
 public:
  IndexSubset(std::vector<int> indices, int n);

  std::span<const int> indices() const noexcept { return indices_; }
  int size() const noexcept { return static_cast<int>(indices_.size()); }
  int n() const noexcept { return n_; }
  /// Mask over BitString values selecting the positions of this subset.
  std::uint32_t mask() const noexcept { return mask_; }
  std::string to_string() const;

  friend bool operator==(const IndexSubset&, const IndexSubset&) = default;

 private:
  std::vector<int> indices_;
  int n_;
  std::uint32_t mask_;
};

/// All size-s subsets of {1, ..., n} in lexicographic order.
std::vector<IndexSubset> index_subsets(int n, int s);

/// t! / prod(mu_j!) for the multiplicities mu_j of a sorted value list.
std::uint64_t class_size_of_sorted(std::span<const std::uint32_t> sorted_values);

CanonicalClass canonicalize(const BitTuple& tuple);

/// Projects every entry onto the positions of `subset`, keeping entry order.
BitTuple restrict(const BitTuple& tuple, const IndexSubset& subset);

/// Value of `value` restricted to the positions of `subset`, packed into an
/// s-bit integer in subset order.
std::uint32_t restrict_value(std::uint32_t value, int n, const IndexSubset& subset) noexcept;

std::size_t occurrence_count(const BitTuple& tuple, const BitString& target);

/// Number of permutation classes of t-tuples of n-bit strings, C(2^n+t-1, t).
BigInt class_count(int n, int t);

/// Throws BudgetExceeded when class_count(n, t) exceeds `budget`.
void check_class_budget(int n, int t, std::uint64_t budget);

/// Walks the sorted class representatives in lexicographic order without
/// materialising them.
class ClassEnumerator {
 public:
  ClassEnumerator(int n, int t, std::uint64_t budget = kDefaultClassBudget);

  /// Advances to the next class; returns false once all classes were visited.
  bool next();
  std::span<const std::uint32_t> current() const noexcept { return current_; }
  CanonicalClass current_class() const;

  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }

 private:
  int n_;
  int t_;
  std::uint32_t max_value_;
  bool started_ = false;
  bool done_ = false;
  std::vector<std::uint32_t> current_;
};

std::vector<CanonicalClass> enumerate_classes(int n, int t,
                                              std::uint64_t budget = kDefaultClassBudget);

}  // namespace tdesign
