#include "tdesign/montecarlo.hpp"

#include <cmath>

#include "tdesign/errors.hpp"

#include "linalg.hpp"

namespace tdesign {

StateVector plus_state(int n) {
  check_qubits(n);
  const auto d = Eigen::Index{1} << n;
  return StateVector{n, Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)))};
}

StateVector basis_state(int n, std::uint32_t x) {
  check_qubits(n);
  const auto d = Eigen::Index{1} << n;
  require(x < static_cast<std::uint64_t>(d), "basis index out of range");
  StateVector out{n, Eigen::VectorXcd::Zero(d)};
  out.amplitudes(x) = 1.0;
  return out;
}

void apply_diagonal(StateVector& state, const DiagonalUnitary& u) {
  require(state.n == u.n, "state and diagonal act on different qubit counts");
  for (Eigen::Index x = 0; x < state.amplitudes.size(); ++x) {
    state.amplitudes(x) *= std::polar(1.0, u.phases[static_cast<std::size_t>(x)]);
  }
}

void apply_two_qubit(StateVector& state, const Eigen::Matrix4cd& gate, int i, int j) {
  const int n = state.n;
  require(i >= 1 && i <= n && j >= 1 && j <= n && i != j, "two-qubit gate targets out of range");
  const std::uint64_t bi = std::uint64_t{1} << (n - i);
  const std::uint64_t bj = std::uint64_t{1} << (n - j);
  const std::uint64_t d = std::uint64_t{1} << n;
  auto& a = state.amplitudes;
  for (std::uint64_t x = 0; x < d; ++x) {
    if (x & (bi | bj)) continue;
    const Eigen::Index idx[4] = {static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x | bj),
                                 static_cast<Eigen::Index>(x | bi), static_cast<Eigen::Index>(x | bi | bj)};
    const Eigen::Vector4cd in(a(idx[0]), a(idx[1]), a(idx[2]), a(idx[3]));
    const Eigen::Vector4cd out = gate * in;
    for (int k = 0; k < 4; ++k) a(idx[k]) = out(k);
  }
}

void apply_layer(StateVector& state, const LocalRandomLayer& layer) {
  require(state.n == layer.n, "state and layer act on different qubit counts");
  for (std::size_t k = 0; k < layer.gates.size(); ++k) {
    apply_two_qubit(state, layer.gates[k], layer.pairs[k].first, layer.pairs[k].second);
  }
}

ClassBasis::ClassBasis(int n, int t, std::uint64_t budget)
    : n_(n), t_(t), classes_(enumerate_classes(n, t, budget)) {
  sqrt_sizes_.reserve(classes_.size());
  for (const auto& c : classes_) sqrt_sizes_.push_back(std::sqrt(static_cast<double>(c.class_size)));
}

Eigen::VectorXcd ClassBasis::amplitudes(const Eigen::VectorXcd& state) const {
  require(state.size() == (Eigen::Index{1} << n_), "state dimension does not match the basis");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(classes_.size()));
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::complex<double> product = sqrt_sizes_[c];
    for (auto v : classes_[c].representative.values()) product *= state(v);
    out(static_cast<Eigen::Index>(c)) = product;
  }
  return out;
}

Eigen::VectorXcd symmetric_amplitudes(const StateVector& state, int t) {
  return ClassBasis(state.n, t).amplitudes(state.amplitudes);
}

SymmetricOperator embed_diagonal(const StateMomentDiagonal& moment,
                                 std::shared_ptr<const ClassBasis> basis) {
  if (!basis) basis = std::make_shared<const ClassBasis>(moment.n, moment.t);
  require(basis->n() == moment.n && basis->t() == moment.t && basis->size() == moment.classes.size(),
          "basis does not match the moment");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  SymmetricOperator out{moment.n, moment.t, basis, Eigen::MatrixXcd::Zero(dim, dim)};
  for (Eigen::Index k = 0; k < dim; ++k) out.matrix(k, k) = to_double(moment.weights[static_cast<std::size_t>(k)]);
  return out;
}

namespace {

struct Accumulated {
  std::shared_ptr<const ClassBasis> basis;
  Eigen::MatrixXcd sum;
  Eigen::MatrixXd real_sq;
  Eigen::MatrixXd imag_sq;
};

Accumulated accumulate(const StateSampler& sampler, int n, int t, std::size_t samples, std::uint64_t seed,
                       bool with_squares) {
  require(samples >= 1, "at least one sample is required");
  auto basis = std::make_shared<const ClassBasis>(n, t);
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Accumulated acc{basis, Eigen::MatrixXcd::Zero(dim, dim), {}, {}};
  if (with_squares) {
    acc.real_sq = Eigen::MatrixXd::Zero(dim, dim);
    acc.imag_sq = Eigen::MatrixXd::Zero(dim, dim);
  }
  for (std::size_t k = 0; k < samples; ++k) {
    auto rng = make_stream(seed, k);
    const auto state = sampler(rng);
    require(state.n == n, "sampler produced a state of the wrong size");
    const Eigen::VectorXcd v = basis->amplitudes(state.amplitudes);
    if (with_squares) {
      const Eigen::MatrixXcd outer = v * v.adjoint();
      acc.sum += outer;
      acc.real_sq += outer.real().cwiseAbs2();
      acc.imag_sq += outer.imag().cwiseAbs2();
    } else {
      acc.sum.selfadjointView<Eigen::Lower>().rankUpdate(v, 1.0);
    }
  }
  if (!with_squares) acc.sum = acc.sum.selfadjointView<Eigen::Lower>();
  return acc;
}

}  // namespace

SymmetricOperator estimate_moment(const StateSampler& sampler, int n, int t, std::size_t samples,
                                  std::uint64_t seed) {
  auto acc = accumulate(sampler, n, t, samples, seed, false);
  return SymmetricOperator{n, t, acc.basis, acc.sum / static_cast<double>(samples)};
}

MomentEstimate estimate_moment_with_errors(const StateSampler& sampler, int n, int t,
                                           std::size_t samples, std::uint64_t seed) {
  require(samples >= 2, "standard errors need at least two samples");
  auto acc = accumulate(sampler, n, t, samples, seed, true);
  const double s = static_cast<double>(samples);
  Eigen::MatrixXcd mean = acc.sum / s;
  auto stderr_of = [&](const Eigen::MatrixXd& sq, const Eigen::MatrixXd& m) {
    const Eigen::MatrixXd var = ((sq / s - m.cwiseAbs2()) * (s / (s - 1.0))).cwiseMax(0.0);
    return Eigen::MatrixXd((var / s).cwiseSqrt());
  };
  MomentEstimate out;
  out.real_stderr = stderr_of(acc.real_sq, mean.real());
  out.imag_stderr = stderr_of(acc.imag_sq, mean.imag());
  out.mean = SymmetricOperator{n, t, acc.basis, std::move(mean)};
  return out;
}

double trace_norm(const Eigen::MatrixXcd& hermitian) {
  require(hermitian.rows() == hermitian.cols(), "trace norm needs a square matrix");
  if (hermitian.size() == 0) return 0.0;
  return linalg::hermitian_eigen(hermitian, false).values.cwiseAbs().sum();
}

double trace_distance(const SymmetricOperator& a, const SymmetricOperator& b) {
  require(a.n == b.n && a.t == b.t && a.matrix.rows() == b.matrix.rows() && a.matrix.cols() == b.matrix.cols(),
          "operators live on different symmetric subspaces");
  return trace_norm(a.matrix - b.matrix);
}

}  // namespace tdesign
