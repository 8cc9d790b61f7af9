#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tdesign/errors.hpp"
#include "tdesign/montecarlo.hpp"
#include "dense_oracle.hpp"

namespace tdesign {
namespace {

StateVector random_state(int n, Rng& rng) {
  StateVector s{n, Eigen::VectorXcd(Eigen::Index{1} << n)};
  for (Eigen::Index x = 0; x < s.amplitudes.size(); ++x) s.amplitudes(x) = complex_normal(rng);
  s.amplitudes.normalize();
  return s;
}

struct SigmaReport {
  std::size_t entries = 0;
  std::size_t beyond_three = 0;
  double max_z = 0.0;
  double max_deterministic_error = 0.0;
};

// Entrywise z-scores of an estimate against an exact matrix. Entries whose
// sample variance vanishes are compared directly.
SigmaReport compare_entries(const MomentEstimate& est, const Eigen::MatrixXcd& exact) {
  SigmaReport out;
  for (Eigen::Index i = 0; i < exact.rows(); ++i) {
    for (Eigen::Index j = 0; j < exact.cols(); ++j) {
      const auto diff = est.mean.matrix(i, j) - exact(i, j);
      for (int part = 0; part < 2; ++part) {
        const double err = part == 0 ? diff.real() : diff.imag();
        const double se = part == 0 ? est.real_stderr(i, j) : est.imag_stderr(i, j);
        if (se < 1e-13) {
          out.max_deterministic_error = std::max(out.max_deterministic_error, std::abs(err));
          continue;
        }
        const double z = std::abs(err) / se;
        ++out.entries;
        if (z > 3.0) ++out.beyond_three;
        out.max_z = std::max(out.max_z, z);
      }
    }
  }
  return out;
}

// With many entries a few 3σ excursions are expected; allow the binomial
// expectation plus three of its standard deviations, and nothing past 5σ.
void expect_consistent(const SigmaReport& r) {
  const double expected = 0.0027 * static_cast<double>(r.entries);
  EXPECT_LE(static_cast<double>(r.beyond_three), expected + 3.0 * std::sqrt(expected) + 1.0)
      << r.beyond_three << " of " << r.entries << " entries beyond 3 sigma";
  EXPECT_LT(r.max_z, 5.0);
  EXPECT_LT(r.max_deterministic_error, 1e-12);
}

TEST(SymmetricAmplitudes, Examples) {
  const auto plus = symmetric_amplitudes(plus_state(1), 2);
  ASSERT_EQ(plus.size(), 3);
  EXPECT_NEAR(std::abs(plus(0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(plus(1) - std::sqrt(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(plus(2) - 0.5), 0.0, 1e-15);

  const auto basis = symmetric_amplitudes(basis_state(2, 2), 2);
  ASSERT_EQ(basis.size(), 10);
  for (Eigen::Index c = 0; c < basis.size(); ++c) EXPECT_EQ(basis(c), (c == 7 ? 1.0 : 0.0)) << c;
}

TEST(SymmetricAmplitudes, MatchesProjectedTensorPower) {
  Rng rng = make_stream(40, 0);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 1; t <= 3; ++t) {
      const ClassBasis basis(n, t);
      const Eigen::MatrixXcd iso = testing::class_isometry(basis);
      const auto s = random_state(n, rng);
      const Eigen::VectorXcd expected = iso * testing::tensor_power(s.amplitudes, t);
      EXPECT_LT((basis.amplitudes(s.amplitudes) - expected).norm(), 1e-12) << n << "," << t;
    }
  }
}

TEST(SymmetricAmplitudes, PreservesNorm) {
  Rng rng = make_stream(41, 0);
  for (int n = 1; n <= 6; ++n) {
    for (int t = 1; t <= 3; ++t) {
      const ClassBasis basis(n, t);
      for (int k = 0; k < 5; ++k) {
        const auto s = random_state(n, rng);
        EXPECT_NEAR(basis.amplitudes(s.amplitudes).norm(), 1.0, 1e-9) << n << "," << t;
      }
    }
  }
}

TEST(StateOps, TwoQubitGateUsesFirstTargetAsHighBit) {
  // CNOT with control on qubit 3 and target qubit 1 maps |001> to |101>.
  Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
  cnot(0, 0) = cnot(2, 2) = 1.0;
  cnot(3, 1) = cnot(1, 3) = 1.0;
  auto s = basis_state(3, 0b001);
  apply_two_qubit(s, cnot, 1, 3);
  EXPECT_EQ(s.amplitudes(0b101), 1.0);
  EXPECT_THROW(apply_two_qubit(s, cnot, 2, 2), InvalidArgument);
  EXPECT_THROW(apply_two_qubit(s, cnot, 0, 2), InvalidArgument);
}

TEST(StateOps, LayerMatchesDenseMatrix) {
  Rng rng = make_stream(42, 0);
  for (int n = 2; n <= 5; ++n) {
    for (auto parity : {LayerParity::kEven, LayerParity::kOdd}) {
      const auto layer = sample_local_random_layer(n, parity, rng);
      auto s = random_state(n, rng);
      const Eigen::VectorXcd expected = testing::dense_layer(layer) * s.amplitudes;
      apply_layer(s, layer);
      EXPECT_LT((s.amplitudes - expected).norm(), 1e-12);
    }
  }
}

TEST(StateOps, DiagonalMultipliesPhases) {
  Rng rng = make_stream(43, 0);
  const auto u = sample_phase_random(make_circuit_spec(3, 2), rng);
  auto s = random_state(3, rng);
  const Eigen::VectorXcd expected = testing::dense_diagonal(u) * s.amplitudes;
  apply_diagonal(s, u);
  EXPECT_LT((s.amplitudes - expected).norm(), 1e-12);
}

TEST(EstimateMoment, ConstantSamplerGivesProjector) {
  const auto fixed = plus_state(3);
  const auto m = estimate_moment([&](Rng&) { return fixed; }, 3, 2, 5, 0);
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
  const Eigen::VectorXcd v = symmetric_amplitudes(fixed, 2);
  EXPECT_LT((m.matrix - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EstimateMoment, DeterministicGivenSeed) {
  const StateSampler sampler = [](Rng& rng) { return random_state(2, rng); };
  const auto a = estimate_moment(sampler, 2, 2, 50, 9);
  const auto b = estimate_moment(sampler, 2, 2, 50, 9);
  const auto c = estimate_moment(sampler, 2, 2, 50, 10);
  EXPECT_EQ(a.matrix, b.matrix);
  EXPECT_NE(a.matrix, c.matrix);
  EXPECT_EQ(a.matrix.rows(), 10);
}

TEST(EstimateMoment, HaarTwoQubitOrbitIsMaximallyMixed) {
  const StateSampler sampler = [](Rng& rng) {
    auto s = basis_state(2, 1);
    apply_two_qubit(s, sample_haar_two_qubit(rng), 1, 2);
    return s;
  };
  const auto est = estimate_moment_with_errors(sampler, 2, 2, 100'000, 50);
  const auto exact = embed_diagonal(haar_state_moment(2, 2), est.mean.basis);
  expect_consistent(compare_entries(est, exact.matrix));
  EXPECT_NEAR(est.mean.trace().real(), 1.0, 1e-9);
}

TEST(EstimateMoment, PhaseRandomStatesMatchExactMoment) {
  const auto spec = make_circuit_spec(2, 2);
  const StateSampler sampler = [&](Rng& rng) {
    auto s = plus_state(2);
    apply_diagonal(s, sample_phase_random(spec, rng));
    return s;
  };
  const auto est = estimate_moment_with_errors(sampler, 2, 2, 100'000, 51);
  const auto exact = embed_diagonal(phase_random_state_moment(2, 2), est.mean.basis);
  expect_consistent(compare_entries(est, exact.matrix));
}

TEST(TraceDistance, Examples) {
  const auto basis = std::make_shared<const ClassBasis>(1, 2);
  const auto haar = embed_diagonal(haar_state_moment(1, 2), basis);
  const auto phase = embed_diagonal(phase_random_state_moment(1, 2), basis);
  EXPECT_NEAR(trace_distance(haar, haar), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(haar, phase), 1.0 / 3.0, 1e-14);

  SymmetricOperator a{1, 2, basis, Eigen::MatrixXcd::Zero(3, 3)};
  SymmetricOperator b = a;
  a.matrix(0, 0) = 1.0;
  b.matrix(2, 2) = 1.0;
  EXPECT_NEAR(trace_distance(a, b), 2.0, 1e-14);

  SymmetricOperator other{2, 2, nullptr, Eigen::MatrixXcd::Zero(10, 10)};
  EXPECT_THROW(trace_distance(a, other), InvalidArgument);
}

TEST(TraceDistance, TriangleInequality) {
  Rng rng = make_stream(44, 0);
  const auto basis = std::make_shared<const ClassBasis>(2, 2);
  auto random_operator = [&]() {
    const auto s = random_state(2, rng);
    const Eigen::VectorXcd v = basis->amplitudes(s.amplitudes);
    return SymmetricOperator{2, 2, basis, v * v.adjoint()};
  };
  for (int k = 0; k < 200; ++k) {
    const auto a = random_operator();
    const auto b = random_operator();
    const auto c = random_operator();
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-9);
  }
}

TEST(PipelineOracle, DenseTensorPowerAgrees) {
  for (int n : {2, 3}) {
    constexpr int t = 2;
    constexpr std::size_t kCircuits = 200;
    const auto spec = make_circuit_spec(n, 1);
    std::vector<Eigen::MatrixXcd> unitaries;
    const StateSampler sampler = [&](Rng& rng) {
      const auto diag = sample_phase_random(spec, rng);
      const auto layer = sample_local_random_layer(n, LayerParity::kEven, rng);
      auto s = plus_state(n);
      apply_diagonal(s, diag);
      apply_layer(s, layer);
      return s;
    };
    const auto fast = estimate_moment(sampler, n, t, kCircuits, 77);
    for (std::size_t k = 0; k < kCircuits; ++k) {
      Rng rng = make_stream(77, k);
      const auto diag = sample_phase_random(spec, rng);
      const auto layer = sample_local_random_layer(n, LayerParity::kEven, rng);
      unitaries.push_back(testing::dense_layer(layer) * testing::dense_diagonal(diag));
    }
    const Eigen::MatrixXcd iso = testing::class_isometry(*fast.basis);
    const Eigen::MatrixXcd dense = testing::dense_moment(unitaries, n, t);
    // The dense moment lives on the symmetric subspace, so compressing loses
    // nothing.
    EXPECT_NEAR(dense.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR((iso * dense * iso.adjoint()).trace().real(), 1.0, 1e-12);
    EXPECT_LT(trace_norm(iso * dense * iso.adjoint() - fast.matrix), 1e-9) << "n=" << n;
  }
}

}  // namespace
}  // namespace tdesign
