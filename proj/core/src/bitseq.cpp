#include "tdesign/bitseq.hpp"

#include <algorithm>
#include <numeric>

#include "tdesign/errors.hpp"

namespace tdesign {

void check_qubits(int n) {
  require(n >= 1 && n <= kMaxQubits,
          "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "], got " +
              std::to_string(n));
}

BitString::BitString(std::uint32_t value, int width) : value_(value), width_(width) {
  check_qubits(width);
  require(width == 32 || value < (std::uint32_t{1} << width),
          "value " + std::to_string(value) + " does not fit in " + std::to_string(width) +
              " bits");
}

BitString BitString::parse(std::string_view bits) {
  require(!bits.empty(), "empty bit string");
  std::uint32_t value = 0;
  for (char c : bits) {
    require(c == '0' || c == '1', "invalid bit character in '" + std::string(bits) + "'");
    value = (value << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return BitString(value, static_cast<int>(bits.size()));
}

int BitString::bit(int position) const {
  require(position >= 1 && position <= width_, "bit position out of range");
  return static_cast<int>((value_ >> (width_ - position)) & 1U);
}

std::string BitString::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int k = 0; k < width_; ++k) {
    if ((value_ >> (width_ - 1 - k)) & 1U) out[static_cast<std::size_t>(k)] = '1';
  }
  return out;
}

BitTuple::BitTuple(int n, std::vector<std::uint32_t> entries) : n_(n), entries_(std::move(entries)) {
  check_qubits(n);
  require(!entries_.empty(), "a tuple needs at least one entry");
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (auto v : entries_) {
    require(v < limit, "entry " + std::to_string(v) + " does not fit in " + std::to_string(n) +
                           " bits");
  }
}

BitTuple BitTuple::from_strings(const std::vector<std::string>& entries) {
  require(!entries.empty(), "a tuple needs at least one entry");
  std::vector<std::uint32_t> values;
  values.reserve(entries.size());
  const int n = static_cast<int>(entries.front().size());
  for (const auto& e : entries) {
    const auto b = BitString::parse(e);
    require(b.width() == n, "all entries of a tuple must have the same width");
    values.push_back(b.value());
  }
  return BitTuple(n, std::move(values));
}

BitTuple BitTuple::parse(std::string_view text) {
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    parts.emplace_back(text.substr(start, end - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_strings(parts);
}

std::string BitTuple::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) out += ',';
    out += BitString(entries_[k], n_).to_string();
  }
  return out + ")";
}

IndexSubset::IndexSubset(std::vector<int> indices, int n) : indices_(std::move(indices)), n_(n), mask_(0) {
  check_qubits(n);
  require(!indices_.empty(), "index subset must be nonempty");
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    const int i = indices_[k];
    require(i >= 1 && i <= n, "index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
    require(k == 0 || indices_[k - 1] < i, "index subset must be strictly increasing");
    mask_ |= std::uint32_t{1} << (n - i);
  }
}

std::string IndexSubset::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(indices_[k]);
  }
  return out;
}

std::vector<IndexSubset> index_subsets(int n, int s) {
  check_qubits(n);
  require(s >= 1 && s <= n, "subset size must lie in [1, n]");
  std::vector<IndexSubset> out;
  std::vector<int> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    out.emplace_back(idx, n);
    int k = s - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - s + k + 1) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::uint64_t class_size_of_sorted(std::span<const std::uint32_t> sorted_values) {
  const auto t = sorted_values.size();
  require(t >= 1 && t <= static_cast<std::size_t>(kMaxCopies),
          "class sizes are limited to t <= " + std::to_string(kMaxCopies));
  // Multiply in the ratio form t!/prod(mu!) incrementally: after placing k
  // entries the running value is the multinomial of the prefix, which divides
  // exactly at every step.
  std::uint64_t size = 1;
  std::uint64_t run = 0;
  for (std::size_t k = 0; k < t; ++k) {
    run = (k > 0 && sorted_values[k] == sorted_values[k - 1]) ? run + 1 : 1;
    size = size * (k + 1) / run;
  }
  return size;
}

CanonicalClass canonicalize(const BitTuple& tuple) {
  std::vector<std::uint32_t> sorted(tuple.values().begin(), tuple.values().end());
  std::sort(sorted.begin(), sorted.end());
  const auto size = class_size_of_sorted(sorted);
  return CanonicalClass{BitTuple(tuple.n(), std::move(sorted)), size};
}

std::uint32_t restrict_value(std::uint32_t value, int n, const IndexSubset& subset) noexcept {
  std::uint32_t out = 0;
  for (int i : subset.indices()) out = (out << 1) | ((value >> (n - i)) & 1U);
  return out;
}

BitTuple restrict(const BitTuple& tuple, const IndexSubset& subset) {
  require(subset.n() == tuple.n(), "index subset was built for n=" + std::to_string(subset.n()) +
                                       " but the tuple has n=" + std::to_string(tuple.n()));
  std::vector<std::uint32_t> out;
  out.reserve(tuple.t());
  for (auto v : tuple.values()) out.push_back(restrict_value(v, tuple.n(), subset));
  return BitTuple(subset.size(), std::move(out));
}

std::size_t occurrence_count(const BitTuple& tuple, const BitString& target) {
  require(target.width() == tuple.n(), "target width differs from the tuple's n");
  return static_cast<std::size_t>(
      std::count(tuple.values().begin(), tuple.values().end(), target.value()));
}

BigInt class_count(int n, int t) {
  require(t >= 1, "t must be positive");
  return binomial(pow2(static_cast<unsigned long>(n)) + (t - 1), static_cast<unsigned long>(t));
}

void check_class_budget(int n, int t, std::uint64_t budget) {
  const auto count = class_count(n, t);
  if (count > BigInt(std::to_string(budget))) {
    throw BudgetExceeded("enumerating " + count.get_str() + " classes for n=" + std::to_string(n) +
                         ", t=" + std::to_string(t) + " exceeds the budget of " +
                         std::to_string(budget));
  }
}

ClassEnumerator::ClassEnumerator(int n, int t, std::uint64_t budget)
    : n_(n), t_(t), max_value_((std::uint32_t{1} << n) - 1) {
  check_qubits(n);
  require(t >= 1 && t <= kMaxCopies, "t must lie in [1, " + std::to_string(kMaxCopies) + "]");
  check_class_budget(n, t, budget);
  current_.assign(static_cast<std::size_t>(t), 0);
}

bool ClassEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  // Combinations with repetition: bump the rightmost entry that can grow and
  // reset everything after it to the same value.
  int k = t_ - 1;
  while (k >= 0 && current_[static_cast<std::size_t>(k)] == max_value_) --k;
  if (k < 0) {
    done_ = true;
    return false;
  }
  const auto v = ++current_[static_cast<std::size_t>(k)];
  std::fill(current_.begin() + k + 1, current_.end(), v);
  return true;
}

CanonicalClass ClassEnumerator::current_class() const {
  return CanonicalClass{BitTuple(n_, current_), class_size_of_sorted(current_)};
}

std::vector<CanonicalClass> enumerate_classes(int n, int t, std::uint64_t budget) {
  ClassEnumerator it(n, t, budget);
  std::vector<CanonicalClass> out;
  out.reserve(class_count(n, t).get_ui());
  while (it.next()) out.push_back(it.current_class());
  return out;
}

}  // namespace tdesign
