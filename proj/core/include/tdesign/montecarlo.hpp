#pragma once

// State vectors and sampled t-th moments on the symmetric subspace.
//
// The symmetric subspace of (C^d)^{⊗t} has the orthonormal basis
// |c> = |class|^{-1/2} sum of |tuple> over the tuples of class c. For a
// product state |φ>^{⊗t} the coordinate on |c> is sqrt(|c|) prod_k φ[c_k].

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "tdesign/bitseq.hpp"
#include "tdesign/circuits.hpp"
#include "tdesign/moments.hpp"
#include "tdesign/rng.hpp"

namespace tdesign {

struct StateVector {
  int n = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

StateVector plus_state(int n);
StateVector basis_state(int n, std::uint32_t x);

void apply_diagonal(StateVector& state, const DiagonalUnitary& u);
/// Applies a 4x4 gate to qubits (i, j); the gate's local index is b_i b_j.
void apply_two_qubit(StateVector& state, const Eigen::Matrix4cd& gate, int i, int j);
void apply_layer(StateVector& state, const LocalRandomLayer& layer);

/// Class basis of the symmetric subspace with the data needed to evaluate
/// coordinates quickly.
class ClassBasis {
 public:
  ClassBasis(int n, int t, std::uint64_t budget = kDefaultClassBudget);

  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }
  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<CanonicalClass>& classes() const noexcept { return classes_; }

  /// Coordinates of |φ>^{⊗t}.
  Eigen::VectorXcd amplitudes(const Eigen::VectorXcd& state) const;

 private:
  int n_;
  int t_;
  std::vector<CanonicalClass> classes_;
  std::vector<double> sqrt_sizes_;
};

Eigen::VectorXcd symmetric_amplitudes(const StateVector& state, int t);

struct SymmetricOperator {
  int n = 0;
  int t = 0;
  std::shared_ptr<const ClassBasis> basis;
  Eigen::MatrixXcd matrix;

  std::complex<double> trace() const { return matrix.trace(); }
};

/// Diagonal exact moment as a dense operator in the same class order.
SymmetricOperator embed_diagonal(const StateMomentDiagonal& moment,
                                 std::shared_ptr<const ClassBasis> basis = nullptr);

/// Draws one state; sample k receives make_stream(seed, k).
using StateSampler = std::function<StateVector(Rng&)>;

SymmetricOperator estimate_moment(const StateSampler& sampler, int n, int t, std::size_t samples,
                                  std::uint64_t seed);

struct MomentEstimate {
  SymmetricOperator mean;
  /// Standard errors of the real and imaginary parts of each entry.
  Eigen::MatrixXd real_stderr;
  Eigen::MatrixXd imag_stderr;
};

MomentEstimate estimate_moment_with_errors(const StateSampler& sampler, int n, int t,
                                           std::size_t samples, std::uint64_t seed);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Eigen::MatrixXcd& hermitian);

double trace_distance(const SymmetricOperator& a, const SymmetricOperator& b);

}  // namespace tdesign
