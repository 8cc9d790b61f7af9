#include "tdesign/moments.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tdesign/errors.hpp"

namespace tdesign {
namespace {

void check_order(int t) { require(t >= 1, "t must be positive"); }

/// Concatenated histograms of the restrictions to each subset. Two classes
/// share a signature iff their restrictions agree on every subset.
std::string marginal_signature(std::span<const std::uint32_t> values, int n,
                               const std::vector<IndexSubset>& subsets) {
  std::string signature;
  for (const auto& subset : subsets) {
    const auto base = signature.size();
    signature.resize(base + (std::size_t{1} << subset.size()), '\0');
    for (auto v : values) ++signature[base + restrict_value(v, n, subset)];
  }
  return signature;
}

std::vector<std::uint32_t> sorted_restriction(std::span<const std::uint32_t> values, int n,
                                              const IndexSubset& subset) {
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(restrict_value(v, n, subset));
  std::sort(out.begin(), out.end());
  return out;
}

StateMomentDiagonal diagonal_moment(int n, int t, std::uint64_t budget,
                                    const std::function<Rational(const CanonicalClass&)>& weight) {
  check_order(t);
  StateMomentDiagonal out{n, t, enumerate_classes(n, t, budget), {}};
  out.weights.reserve(out.classes.size());
  for (const auto& c : out.classes) out.weights.push_back(weight(c));
  return out;
}

/// Two-pass search for two classes with equal signatures. The first pass keeps
/// only (hash, ordinal) per class; classes whose hashes collide are then
/// re-materialised and compared exactly.
std::optional<TuplePair> find_signature_collision(int n, int t,
                                                  const std::vector<IndexSubset>& subsets,
                                                  std::uint64_t budget) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;
  {
    ClassEnumerator it(n, t, budget);
    keyed.reserve(class_count(n, t).get_ui());
    std::uint64_t ordinal = 0;
    const std::hash<std::string_view> hasher;
    while (it.next()) {
      const auto sig = marginal_signature(it.current(), n, subsets);
      keyed.emplace_back(hasher(sig), ordinal++);
    }
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<std::uint64_t> candidates;
  for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i + 1].first) {
      candidates.push_back(keyed[i].second);
      candidates.push_back(keyed[i + 1].second);
    }
  }
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::map<std::uint64_t, std::vector<std::uint32_t>> reps;
  {
    ClassEnumerator it(n, t, budget);
    std::uint64_t ordinal = 0;
    auto wanted = candidates.begin();
    while (wanted != candidates.end() && it.next()) {
      if (ordinal == *wanted) {
        reps.emplace(ordinal, std::vector<std::uint32_t>(it.current().begin(), it.current().end()));
        ++wanted;
      }
      ++ordinal;
    }
  }

  std::size_t i = 0;
  while (i < keyed.size()) {
    std::size_t j = i + 1;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
    for (std::size_t a = i; j - i > 1 && a < j; ++a) {
      const auto& ra = reps.at(keyed[a].second);
      const auto sa = marginal_signature(ra, n, subsets);
      for (std::size_t b = a + 1; b < j; ++b) {
        const auto& rb = reps.at(keyed[b].second);
        if (marginal_signature(rb, n, subsets) == sa) {
          return TuplePair{BitTuple(n, ra), BitTuple(n, rb)};
        }
      }
    }
    i = j;
  }
  return std::nullopt;
}

}  // namespace

Rational StateMomentDiagonal::trace() const {
  Rational sum = 0;
  for (const auto& w : weights) sum += w;
  return sum;
}

const Rational& StateMomentDiagonal::weight_of(const BitTuple& tuple) const {
  require(tuple.n() == n && tuple.t() == static_cast<std::size_t>(t), "tuple shape does not match the moment");
  const auto key = canonicalize(tuple).representative;
  const auto it = std::lower_bound(classes.begin(), classes.end(), key,
                                   [](const CanonicalClass& c, const BitTuple& k) {
                                     return std::lexicographical_compare(
                                         c.representative.values().begin(), c.representative.values().end(),
                                         k.values().begin(), k.values().end());
                                   });
  require(it != classes.end() && it->representative == key, "class not present in the moment");
  return weights[static_cast<std::size_t>(it - classes.begin())];
}

StateMomentDiagonal haar_state_moment(int n, int t, std::uint64_t budget) {
  const Rational weight(BigInt(1), class_count(n, t));
  return diagonal_moment(n, t, budget, [&](const CanonicalClass&) { return weight; });
}

StateMomentDiagonal phase_random_state_moment(int n, int t, std::uint64_t budget) {
  const auto dt = pow2(static_cast<unsigned long>(n) * static_cast<unsigned long>(t));
  return diagonal_moment(n, t, budget, [&](const CanonicalClass& c) {
    Rational w(BigInt(std::to_string(c.class_size)), dt);
    w.canonicalize();
    return w;
  });
}

Rational diagonal_trace_distance(const StateMomentDiagonal& a, const StateMomentDiagonal& b) {
  require(a.n == b.n && a.t == b.t && a.classes.size() == b.classes.size(),
          "moments live on different class bases");
  Rational sum = 0;
  for (std::size_t k = 0; k < a.weights.size(); ++k) sum += abs(a.weights[k] - b.weights[k]);
  return sum;
}

PairIndicator::PairIndicator(int n, int t, int support) : n_(n), t_(t), support_(support) {
  check_qubits(n);
  check_order(t);
  require(support >= 1 && support <= n,
          "gate support r must lie in [1, n], got " + std::to_string(support));
  subsets_ = index_subsets(n, support);
}

bool PairIndicator::operator()(const BitTuple& a, const BitTuple& b) const {
  const auto t = static_cast<std::size_t>(t_);
  require(a.n() == n_ && b.n() == n_ && a.t() == t && b.t() == t,
          "tuple shapes do not match the indicator (n=" + std::to_string(n_) +
              ", t=" + std::to_string(t_) + ")");
  for (const auto& subset : subsets_) {
    if (sorted_restriction(a.values(), n_, subset) != sorted_restriction(b.values(), n_, subset)) {
      return false;
    }
  }
  return true;
}

PairIndicator diag_moment_indicator(int n, int t) { return PairIndicator(n, t, n); }

PairIndicator circuit_moment_indicator(int n, int t, int r) { return PairIndicator(n, t, r); }

int design_threshold(int n, int t) {
  check_qubits(n);
  check_order(t);
  return std::min(static_cast<int>(std::bit_width(static_cast<unsigned long long>(t))), n);
}

bool is_violating_pair(const TuplePair& pair, int r) {
  const auto& a = pair.first;
  const auto& b = pair.second;
  require(a.n() == b.n() && a.t() == b.t(), "pair tuples differ in shape");
  std::vector<std::uint32_t> sa(a.values().begin(), a.values().end());
  std::vector<std::uint32_t> sb(b.values().begin(), b.values().end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa == sb) return false;
  return PairIndicator(a.n(), static_cast<int>(a.t()), r)(a, b);
}

TuplePair parity_witness(int n, int t, int r) {
  check_qubits(n);
  require(r >= 1 && r < n, "parity witness needs 1 <= r < n");
  require(t >= 1 && (r >= 63 || (std::uint64_t{1} << r) <= static_cast<std::uint64_t>(t)),
          "parity witness needs t >= 2^r");
  const int width = r + 1;
  const int shift = n - width;
  std::vector<std::uint32_t> even;
  std::vector<std::uint32_t> odd;
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << width); ++y) {
    (std::popcount(y) % 2 == 0 ? even : odd).push_back(y << shift);
  }
  even.resize(static_cast<std::size_t>(t), 0);
  odd.resize(static_cast<std::size_t>(t), 0);
  return TuplePair{BitTuple(n, std::move(even)), BitTuple(n, std::move(odd))};
}

TuplePair parity_pair(int s, int g) {
  check_qubits(s);
  require(g >= 1, "multiplicity g must be positive");
  std::vector<std::uint32_t> even;
  std::vector<std::uint32_t> odd;
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << s); ++y) {
    for (int k = 0; k < g; ++k) (std::popcount(y) % 2 == 0 ? even : odd).push_back(y);
  }
  return TuplePair{BitTuple(s, std::move(even)), BitTuple(s, std::move(odd))};
}

DesignVerdict is_exact_design(int n, int t, int r, DesignSearch mode, std::uint64_t budget) {
  check_qubits(n);
  check_order(t);
  require(r >= 1 && r <= n, "gate support r must lie in [1, n], got " + std::to_string(r));

  if (mode == DesignSearch::kThreshold) {
    if (r >= design_threshold(n, t)) return DesignVerdict{true, std::nullopt};
    return DesignVerdict{false, parity_witness(n, t, r)};
  }
  // A full-support gate is itself a random diagonal unitary.
  if (r == n) return DesignVerdict{true, std::nullopt};

  const bool parity_applies = r < 63 && (std::uint64_t{1} << r) <= static_cast<std::uint64_t>(t);
  if (mode == DesignSearch::kExhaustive && parity_applies) {
    auto witness = parity_witness(n, t, r);
    if (!is_violating_pair(witness, r)) {
      throw std::logic_error("parity witness failed verification");
    }
    return DesignVerdict{false, std::move(witness)};
  }

  require(t <= kMaxCopies, "exhaustive search is limited to t <= " + std::to_string(kMaxCopies));
  auto collision = find_signature_collision(n, t, index_subsets(n, r), budget);
  if (collision) return DesignVerdict{false, std::move(collision)};
  return DesignVerdict{true, std::nullopt};
}

int minimal_exact_r(int n, int t, DesignSearch mode, std::uint64_t budget) {
  for (int r = 1; r <= n; ++r) {
    if (is_exact_design(n, t, r, mode, budget).is_exact_design) return r;
  }
  throw std::logic_error("no exact support size found; r = n is always exact");
}

OccurrenceGap occurrence_gap(const BitTuple& a, const BitTuple& b) {
  require(a.n() == b.n() && a.t() == b.t(), "tuples differ in shape");
  std::map<std::uint32_t, long> diff;
  for (auto v : a.values()) ++diff[v];
  for (auto v : b.values()) --diff[v];

  std::size_t largest = 0;
  std::size_t smallest = SIZE_MAX;
  for (const auto& [value, d] : diff) {
    const auto g = static_cast<std::size_t>(d < 0 ? -d : d);
    largest = std::max(largest, g);
    smallest = std::min(smallest, g);
  }
  // Strings absent from both tuples contribute a zero gap.
  if (diff.size() < (std::size_t{1} << a.n())) smallest = 0;
  const bool uniform = smallest == largest;
  return OccurrenceGap{largest, uniform};
}

std::vector<TuplePair> lemma_hypothesis_pairs(int s, int t, std::uint64_t budget) {
  check_qubits(s);
  check_order(t);
  const auto subsets = s > 1 ? index_subsets(s, s - 1) : std::vector<IndexSubset>{};
  std::unordered_map<std::string, std::vector<std::vector<std::uint32_t>>> groups;
  ClassEnumerator it(s, t, budget);
  while (it.next()) {
    groups[marginal_signature(it.current(), s, subsets)].emplace_back(it.current().begin(),
                                                                      it.current().end());
  }
  // Deterministic output order: by first member of each group.
  std::vector<const std::vector<std::vector<std::uint32_t>>*> ordered;
  for (const auto& [sig, members] : groups) {
    if (members.size() > 1) ordered.push_back(&members);
  }
  std::sort(ordered.begin(), ordered.end(), [](auto* x, auto* y) { return x->front() < y->front(); });

  std::vector<TuplePair> out;
  for (const auto* members : ordered) {
    for (std::size_t i = 0; i < members->size(); ++i) {
      for (std::size_t j = i + 1; j < members->size(); ++j) {
        out.push_back(TuplePair{BitTuple(s, (*members)[i]), BitTuple(s, (*members)[j])});
      }
    }
  }
  return out;
}

}  // namespace tdesign
