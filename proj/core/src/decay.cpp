#include "tdesign/decay.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "tdesign/circuits.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/exact_analysis.hpp"
#include "tdesign/montecarlo.hpp"

#include "linalg.hpp"

namespace tdesign {
namespace {

constexpr std::uint64_t kBootstrapStream = std::uint64_t{1} << 63;
constexpr Eigen::Index kChunkColumns = 1024;

/// Left-multiplies every column of `m` by a two-qubit gate on (i, j).
void apply_gate_rows(Eigen::MatrixXcd& m, const Eigen::Matrix4cd& gate, int i, int j, int n) {
  const std::uint64_t bi = std::uint64_t{1} << (n - i);
  const std::uint64_t bj = std::uint64_t{1} << (n - j);
  const std::uint64_t d = std::uint64_t{1} << n;
  Eigen::Matrix<std::complex<double>, 4, Eigen::Dynamic> block(4, m.cols());
  for (std::uint64_t x = 0; x < d; ++x) {
    if (x & (bi | bj)) continue;
    const Eigen::Index idx[4] = {static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x | bj),
                                 static_cast<Eigen::Index>(x | bi), static_cast<Eigen::Index>(x | bi | bj)};
    for (int k = 0; k < 4; ++k) block.row(k) = m.row(idx[k]);
    block = gate * block;
    for (int k = 0; k < 4; ++k) m.row(idx[k]) = block.row(k);
  }
}

void apply_layer_rows(Eigen::MatrixXcd& m, const LocalRandomLayer& layer) {
  for (std::size_t k = 0; k < layer.gates.size(); ++k) {
    apply_gate_rows(m, layer.gates[k], layer.pairs[k].first, layer.pairs[k].second, layer.n);
  }
}

/// Per-sample evolving data. In design-average mode `columns` holds the whole
/// circuit unitary; in sampled mode it holds the single evolved state.
struct Sample {
  Rng rng;
  Eigen::MatrixXcd columns;
};

Eigen::MatrixXcd hermitian_from_lower(const Eigen::MatrixXcd& lower) {
  return lower.selfadjointView<Eigen::Lower>();
}

}  // namespace

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "a line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  require(sxx > 0, "a line fit needs two distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (fit.intercept + fit.slope * x[k]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

DecayResult decay_experiment(const DecayConfig& config) {
  const int n = config.n;
  const int t = config.t;
  check_qubits(n);
  require(n >= 2, "brickwork layers need n >= 2");
  require(t >= 1, "t must be positive");
  require(config.max_T >= 0, "max_T must be nonnegative");
  require(config.batches >= 2 && config.batches % 2 == 0, "batch count must be even and at least 2");
  require(config.samples >= static_cast<std::size_t>(config.batches), "need at least one sample per batch");
  require(config.bootstrap_resamples >= 2, "need at least two bootstrap resamples");
  const bool averaged = config.mode == DecayMode::kDesignAverage;
  require(!averaged || t == 2, "design-average mode is implemented for t = 2");

  const ClassBasis basis(n, t);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const auto d = Eigen::Index{1} << n;
  const double c_inv = 1.0 / static_cast<double>(dim);
  const double dd = static_cast<double>(d) * static_cast<double>(d);
  // X_b = c0 I + c1 A_b / |b|, with A_b the batch sum of outer products.
  const double c0 = averaged ? 2.0 / dd - c_inv : -c_inv;
  const double c1 = averaged ? -1.0 / dd : 1.0;

  DecayResult result;
  result.n = n;
  result.t = t;
  result.samples = config.samples;
  result.eta = eta_exact(n, t).value;

  const auto diag_spec = make_circuit_spec(n, n);
  std::vector<Sample> samples;
  samples.reserve(config.samples);
  for (std::size_t s = 0; s < config.samples; ++s) {
    Sample sample{make_stream(config.seed, s), {}};
    if (averaged) {
      sample.columns = Eigen::MatrixXcd::Identity(d, d);
    } else {
      auto state = plus_state(n);
      apply_diagonal(state, sample_phase_random(diag_spec, sample.rng));
      sample.columns = state.amplitudes;
    }
    samples.push_back(std::move(sample));
  }

  const auto batches = static_cast<std::size_t>(config.batches);
  std::vector<std::size_t> batch_sizes(batches, 0);
  for (std::size_t s = 0; s < config.samples; ++s) ++batch_sizes[s * batches / config.samples];

  auto bootstrap_rng = make_stream(config.seed, kBootstrapStream);
  std::vector<Eigen::MatrixXcd> accum(batches);

  for (int T = 0; T <= config.max_T; ++T) {
    if (T > 0) {
      const auto parity = (T - 1) % 2 == 0 ? LayerParity::kEven : LayerParity::kOdd;
      for (auto& sample : samples) apply_layer_rows(sample.columns, sample_local_random_layer(n, parity, sample.rng));
    }

    for (auto& a : accum) a = Eigen::MatrixXcd::Zero(dim, dim);
    std::size_t s = 0;
    for (std::size_t b = 0; b < batches; ++b) {
      Eigen::MatrixXcd chunk(dim, kChunkColumns);
      Eigen::Index filled = 0;
      auto flush = [&] {
        if (filled == 0) return;
        linalg::hermitian_rank_update(accum[b], chunk.leftCols(filled));
        filled = 0;
      };
      for (std::size_t k = 0; k < batch_sizes[b]; ++k, ++s) {
        const auto& cols = samples[s].columns;
        for (Eigen::Index x = 0; x < cols.cols(); ++x) {
          if (filled == kChunkColumns) flush();
          chunk.col(filled++) = basis.amplitudes(cols.col(x));
        }
      }
      flush();
    }

    // Batch deviations from the Haar moment (1/C) I, full Hermitian form.
    auto& dev = accum;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd halves[2] = {Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim)};
    std::size_t half_sizes[2] = {0, 0};
    for (std::size_t b = 0; b < batches; ++b) {
      Eigen::MatrixXcd full = hermitian_from_lower(accum[b]) * (c1 / static_cast<double>(batch_sizes[b]));
      dev[b].swap(full);
      dev[b].diagonal().array() += c0;
      const double w = static_cast<double>(batch_sizes[b]);
      total += dev[b] * (w / static_cast<double>(config.samples));
      halves[b % 2] += dev[b] * w;
      half_sizes[b % 2] += batch_sizes[b];
    }

    const auto eig = linalg::hermitian_eigen(total, true);
    const auto& lambda = eig.values;
    DecayPoint point;
    point.T = T;
    point.distance = lambda.cwiseAbs().sum();

    // Linearised bootstrap: D(X*) ~ tr(P X*) with P = sign(X).
    const Eigen::MatrixXcd sign_total =
        eig.vectors * lambda.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }).asDiagonal() *
        eig.vectors.adjoint();
    std::vector<double> f(batches);
    for (std::size_t b = 0; b < batches; ++b) f[b] = sign_total.cwiseProduct(dev[b].conjugate()).sum().real();
    std::vector<double> values(static_cast<std::size_t>(config.bootstrap_resamples));
    for (auto& value : values) {
      double num = 0, den = 0;
      for (std::size_t k = 0; k < batches; ++k) {
        const auto b = uniform_index(bootstrap_rng, batches);
        num += f[b] * static_cast<double>(batch_sizes[b]);
        den += static_cast<double>(batch_sizes[b]);
      }
      value = num / den;
    }
    const double reps = static_cast<double>(values.size());
    double mean = 0;
    for (double v : values) mean += v;
    mean /= reps;
    double sq = 0;
    for (double v : values) sq += (v - mean) * (v - mean);
    point.std_error = std::sqrt(sq / (reps - 1.0));

    const Eigen::MatrixXcd split = halves[0] / static_cast<double>(half_sizes[0]) -
                                   halves[1] / static_cast<double>(half_sizes[1]);
    point.noise_floor = trace_norm(split) / 2.0;
    result.points.push_back(point);
  }

  std::vector<double> xs, ys;
  for (auto& p : result.points) {
    if (!(p.distance > 3.0 * p.std_error && p.distance > 3.0 * p.noise_floor)) break;
    p.in_fit = true;
    xs.push_back(p.T);
    ys.push_back(std::log2(p.distance));
  }
  result.fit_points = xs.size();
  result.alpha = std::numeric_limits<double>::quiet_NaN();
  result.intercept = std::numeric_limits<double>::quiet_NaN();
  result.r_squared = std::numeric_limits<double>::quiet_NaN();
  if (xs.size() >= 2) {
    const auto fit = fit_line(xs, ys);
    result.fit_valid = fit.slope < 0;
    result.alpha = fit.slope < 0 ? -1.0 / fit.slope : std::numeric_limits<double>::infinity();
    result.intercept = fit.intercept;
    // Two points always lie on a line, so R^2 is only reported from three on.
    if (xs.size() >= 3) result.r_squared = fit.r_squared;
  }
  return result;
}

}  // namespace tdesign
