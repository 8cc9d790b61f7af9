#include "tdesign/circuits.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "tdesign/errors.hpp"

namespace tdesign {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t dimension(int n) { return std::size_t{1} << n; }

void check_support(int n, int r) {
  check_qubits(n);
  require(r >= 1 && r <= n, "gate support r must lie in [1, n], got " + std::to_string(r));
}

/// Nonempty subsets of `support`, by size and then lexicographically.
std::vector<IndexSubset> nonempty_subsets(const IndexSubset& support) {
  const int r = support.size();
  std::vector<IndexSubset> out;
  for (int s = 1; s <= r; ++s) {
    for (const auto& local : index_subsets(r, s)) {
      std::vector<int> indices;
      for (int i : local.indices()) indices.push_back(support.indices()[static_cast<std::size_t>(i - 1)]);
      out.emplace_back(std::move(indices), support.n());
    }
  }
  return out;
}

}  // namespace

double reduce_angle(double angle) {
  double out = std::fmod(angle, kTwoPi);
  if (out < 0) out += kTwoPi;
  return out >= kTwoPi ? 0.0 : out;
}

DiagonalUnitary DiagonalUnitary::identity(int n) {
  check_qubits(n);
  return DiagonalUnitary{n, std::vector<double>(dimension(n), 0.0)};
}

DiagonalUnitary DiagonalUnitary::compose(const DiagonalUnitary& other) const {
  require(n == other.n, "diagonal unitaries act on different qubit counts");
  DiagonalUnitary out{n, phases};
  for (std::size_t x = 0; x < phases.size(); ++x) out.phases[x] = reduce_angle(phases[x] + other.phases[x]);
  return out;
}

DiagonalUnitary DiagonalUnitary::conjugate() const {
  DiagonalUnitary out{n, phases};
  for (auto& p : out.phases) p = reduce_angle(-p);
  return out;
}

PhaseRandomCircuitSpec make_circuit_spec(int n, int r) {
  check_support(n, r);
  return PhaseRandomCircuitSpec{n, r, index_subsets(n, r)};
}

double CPhaseGate::angle() const { return kTwoPi * static_cast<double>(k) / static_cast<double>(m); }

std::vector<DiagGate> sample_phase_random_gates(const PhaseRandomCircuitSpec& spec, Rng& rng) {
  std::vector<DiagGate> gates;
  gates.reserve(spec.gate_supports.size());
  for (const auto& support : spec.gate_supports) {
    std::vector<double> phases(dimension(support.size()));
    for (auto& p : phases) p = uniform_angle(rng);
    gates.push_back(DiagGate{support, std::move(phases)});
  }
  return gates;
}

DiagonalUnitary sample_phase_random(const PhaseRandomCircuitSpec& spec, Rng& rng) {
  return diagonal_from_gates(spec.n, sample_phase_random_gates(spec, rng));
}

DiagonalUnitary sample_phase_random(const PhaseRandomCircuitSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return sample_phase_random(spec, rng);
}

std::uint32_t discrete_phase_levels(int t, int s) {
  require(t >= 1, "t must be positive");
  require(s >= 1, "controlled-phase size must be positive");
  if (s > 32) return 1;
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(t) >> (s - 1)) + 1;
}

std::vector<CPhaseGate> sample_discrete_gates(int n, int t, int r, Rng& rng) {
  check_support(n, r);
  require(t >= 1, "t must be positive");
  std::vector<CPhaseGate> gates;
  for (const auto& support : index_subsets(n, r)) {
    for (auto& sub : nonempty_subsets(support)) {
      const auto m = discrete_phase_levels(t, sub.size());
      const auto k = static_cast<std::uint32_t>(uniform_index(rng, m));
      gates.push_back(CPhaseGate{std::move(sub), k, m});
    }
  }
  return gates;
}

DiagonalUnitary sample_discrete_design(int n, int t, int r, Rng& rng) {
  return diagonal_from_gates(n, sample_discrete_gates(n, t, r, rng));
}

DiagonalUnitary sample_discrete_design(int n, int t, int r, std::uint64_t seed) {
  Rng rng(seed);
  return sample_discrete_design(n, t, r, rng);
}

DiagonalUnitary diagonal_from_gates(int n, const std::vector<DiagGate>& gates) {
  auto out = DiagonalUnitary::identity(n);
  for (const auto& gate : gates) {
    require(gate.targets.n() == n, "gate built for a different qubit count");
    require(gate.phases.size() == dimension(gate.targets.size()), "gate phase count must be 2^r");
    for (std::size_t x = 0; x < out.phases.size(); ++x) {
      out.phases[x] += gate.phases[restrict_value(static_cast<std::uint32_t>(x), n, gate.targets)];
    }
  }
  for (auto& p : out.phases) p = reduce_angle(p);
  return out;
}

DiagonalUnitary diagonal_from_gates(int n, const std::vector<CPhaseGate>& gates) {
  auto out = DiagonalUnitary::identity(n);
  for (const auto& gate : gates) {
    require(gate.targets.n() == n, "gate built for a different qubit count");
    require(gate.m >= 1 && gate.k < gate.m, "controlled phase needs 0 <= k < m");
    const auto mask = gate.targets.mask();
    const double angle = gate.angle();
    for (std::size_t x = 0; x < out.phases.size(); ++x) {
      if ((static_cast<std::uint32_t>(x) & mask) == mask) out.phases[x] += angle;
    }
  }
  for (auto& p : out.phases) p = reduce_angle(p);
  return out;
}

Rational root_of_unity_average(std::uint32_t m, long delta) {
  require(m >= 1, "number of roots must be positive");
  // Geometric series: sum_k w^(k delta) is m when w^delta = 1 and 0 otherwise.
  return delta % static_cast<long>(m) == 0 ? Rational(1) : Rational(0);
}

Rational discrete_phase_average(int t, int r, const BitTuple& a, const BitTuple& b) {
  const int n = a.n();
  require(b.n() == n && a.t() == b.t() && a.t() == static_cast<std::size_t>(t),
          "tuple shapes do not match");
  check_support(n, r);
  Rational average = 1;
  for (int s = 1; s <= r; ++s) {
    const auto m = discrete_phase_levels(t, s);
    for (const auto& sub : index_subsets(n, s)) {
      const auto mask = sub.mask();
      long delta = 0;
      for (auto v : a.values()) delta += (v & mask) == mask;
      for (auto v : b.values()) delta -= (v & mask) == mask;
      // Each I_s sits in C(n-s, r-s) supports with independent draws; a 0/1
      // factor is unchanged by the power.
      average *= root_of_unity_average(m, delta);
      if (average == 0) return average;
    }
  }
  return average;
}

bool exact_discrete_moment_check(int n, int t, int r, std::uint64_t budget) {
  check_support(n, r);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> residues;  // (mask, m)
  for (int s = 1; s <= r; ++s) {
    for (const auto& sub : index_subsets(n, s)) residues.emplace_back(sub.mask(), discrete_phase_levels(t, s));
  }
  // The pair average is 1 iff every all-ones count agrees modulo its m_s, so
  // two classes averaging to 1 share the residue vector below.
  std::unordered_set<std::string> seen;
  ClassEnumerator it(n, t, budget);
  while (it.next()) {
    std::string key;
    key.reserve(residues.size());
    for (const auto& [mask, m] : residues) {
      std::uint32_t count = 0;
      for (auto v : it.current()) count += (v & mask) == mask;
      key.push_back(static_cast<char>(count % m));
    }
    if (!seen.insert(std::move(key)).second) return false;
  }
  return true;
}

CostModel CostModel::quadratic() {
  return CostModel{"quadratic", [](int s) -> BigInt { return BigInt(s) * BigInt(s); }};
}

CostModel CostModel::unit() {
  return CostModel{"unit", [](int) -> BigInt { return BigInt(1); }};
}

GateCount gate_count(int n, int t, const CostModel& cost_model) {
  require(n >= 1, "qubit count must be positive");
  require(t >= 1, "t must be positive");
  require(static_cast<bool>(cost_model.cost), "cost model has no cost function");
  GateCount out;
  out.n = n;
  out.t = t;
  out.r = std::min(static_cast<int>(std::bit_width(static_cast<unsigned>(t))), n);
  out.supports = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(out.r));
  out.total_elementary = 0;
  out.total_below_support = 0;
  for (int s = 1; s <= out.r; ++s) {
    const BigInt count = out.supports * binomial(static_cast<unsigned long>(out.r), static_cast<unsigned long>(s));
    out.per_size_counts[s] = count;
    const BigInt cost = cost_model.cost(s);
    require(cost >= 0, "gate costs must be nonnegative");
    out.total_elementary += count * cost;
    if (s < out.r) out.total_below_support += count * cost;
  }
  return out;
}

std::vector<std::pair<int, int>> brickwork_pairs(int n, LayerParity parity) {
  require(n >= 2, "a brickwork layer needs at least two qubits");
  std::vector<std::pair<int, int>> out;
  for (int i = parity == LayerParity::kEven ? 1 : 2; i + 1 <= n; i += 2) out.emplace_back(i, i + 1);
  return out;
}

Eigen::MatrixXcd sample_haar_unitary(int dim, Rng& rng) {
  require(dim >= 1, "dimension must be positive");
  Eigen::MatrixXcd z(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) z(i, j) = complex_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const auto d = packed(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

Eigen::Matrix4cd sample_haar_two_qubit(Rng& rng) { return sample_haar_unitary(4, rng); }

LocalRandomLayer sample_local_random_layer(int n, LayerParity parity, Rng& rng) {
  check_qubits(n);
  LocalRandomLayer layer{n, parity, brickwork_pairs(n, parity), {}};
  layer.gates.reserve(layer.pairs.size());
  for (std::size_t k = 0; k < layer.pairs.size(); ++k) layer.gates.push_back(sample_haar_two_qubit(rng));
  return layer;
}

LocalRandomLayer sample_local_random_layer(int n, LayerParity parity, std::uint64_t seed) {
  Rng rng(seed);
  return sample_local_random_layer(n, parity, rng);
}

}  // namespace tdesign
