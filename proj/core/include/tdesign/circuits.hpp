#pragma once

// Random diagonal circuits and brickwork layers of two-qubit gates.
//
// Diagonal unitaries are phase vectors of length 2^n: entry x multiplies |x>.
// Qubit i (1-based) is bit position i of x, i.e. bit n-i of its value.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tdesign/bitseq.hpp"
#include "tdesign/rational.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

/// Angle reduced to [0, 2π).
double reduce_angle(double angle);

struct DiagonalUnitary {
  int n = 0;
  std::vector<double> phases;

  static DiagonalUnitary identity(int n);

  /// Product of the two diagonals: phases add.
  DiagonalUnitary compose(const DiagonalUnitary& other) const;
  /// Adjoint: phases negate.
  DiagonalUnitary conjugate() const;
};

struct PhaseRandomCircuitSpec {
  int n = 0;
  int r = 0;
  /// Every size-r subset of the qubits, lexicographic.
  std::vector<IndexSubset> gate_supports;
};

PhaseRandomCircuitSpec make_circuit_spec(int n, int r);

/// Diagonal gate on `targets`; phases[y] multiplies the local basis state y
/// (targets read in increasing order, first target most significant).
struct DiagGate {
  IndexSubset targets;
  std::vector<double> phases;
};

/// diag(1, ..., 1, e^{2πi k/m}) on `targets`: only the all-ones state of the
/// support picks up the phase.
struct CPhaseGate {
  IndexSubset targets;
  std::uint32_t k = 0;
  std::uint32_t m = 1;

  double angle() const;
  friend bool operator==(const CPhaseGate&, const CPhaseGate&) = default;
};

std::vector<DiagGate> sample_phase_random_gates(const PhaseRandomCircuitSpec& spec, Rng& rng);
DiagonalUnitary sample_phase_random(const PhaseRandomCircuitSpec& spec, Rng& rng);
DiagonalUnitary sample_phase_random(const PhaseRandomCircuitSpec& spec, std::uint64_t seed);

/// m_s = floor(t / 2^(s-1)) + 1 phase levels for a size-s controlled phase.
std::uint32_t discrete_phase_levels(int t, int s);

/// For every support I_r and every nonempty I_s inside it (sizes increasing,
/// lexicographic within a size) one independent controlled-phase gate.
std::vector<CPhaseGate> sample_discrete_gates(int n, int t, int r, Rng& rng);
DiagonalUnitary sample_discrete_design(int n, int t, int r, Rng& rng);
DiagonalUnitary sample_discrete_design(int n, int t, int r, std::uint64_t seed);

DiagonalUnitary diagonal_from_gates(int n, const std::vector<DiagGate>& gates);
DiagonalUnitary diagonal_from_gates(int n, const std::vector<CPhaseGate>& gates);

/// Mean of e^{2πi k Δ / m} over k = 0..m-1: 1 if m divides Δ, else 0.
Rational root_of_unity_average(std::uint32_t m, long delta);

/// Exact average of the phase factor e^{i(φ(a) - φ(b))} for one tuple pair
/// over all phase choices of the discrete circuit.
Rational discrete_phase_average(int t, int r, const BitTuple& a, const BitTuple& b);

/// True iff the discrete circuit's pair averages equal the fully random
/// diagonal twirl (1 on equal classes, 0 elsewhere) on every class pair.
bool exact_discrete_moment_check(int n, int t, int r,
                                 std::uint64_t budget = kDefaultClassBudget);

/// Elementary-gate cost of a size-s controlled phase.
struct CostModel {
  std::string name;
  std::function<BigInt(int)> cost;

  static CostModel quadratic();
  static CostModel unit();
};

struct GateCount {
  int n = 0;
  int t = 0;
  int r = 0;
  BigInt supports;
  /// s -> C(n, r) C(r, s) for s = 1..r.
  std::map<int, BigInt> per_size_counts;
  /// Weighted sum over s = 1..r.
  BigInt total_elementary;
  /// Weighted sum over s = 1..r-1 only.
  BigInt total_below_support;
};

/// Counting only, so n is not limited by the simulation width.
GateCount gate_count(int n, int t, const CostModel& cost_model = CostModel::quadratic());

enum class LayerParity { kEven, kOdd };

/// Qubit pairs of one brickwork layer on an open chain: (1,2),(3,4),... for
/// even parity, (2,3),(4,5),... for odd.
std::vector<std::pair<int, int>> brickwork_pairs(int n, LayerParity parity);

/// Haar-distributed unitary: Ginibre matrix, QR, then R's diagonal phases
/// moved into Q so that R has a positive diagonal.
Eigen::MatrixXcd sample_haar_unitary(int dim, Rng& rng);
Eigen::Matrix4cd sample_haar_two_qubit(Rng& rng);

struct LocalRandomLayer {
  int n = 0;
  LayerParity parity = LayerParity::kEven;
  std::vector<std::pair<int, int>> pairs;
  /// gates[k] acts on pairs[k]; local index (b_i b_j) with b_i most significant.
  std::vector<Eigen::Matrix4cd> gates;
};

LocalRandomLayer sample_local_random_layer(int n, LayerParity parity, Rng& rng);
LocalRandomLayer sample_local_random_layer(int n, LayerParity parity, std::uint64_t seed);

}  // namespace tdesign
