#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace tdesign {

/// All samplers draw from a 64-bit Mersenne Twister, whose output sequence is
/// fixed by the C++ standard. Conversions to floating point below are written
/// out explicitly so results do not depend on the standard library's
/// distribution implementations.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `stream` derived from a global seed:
///   splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
/// Distinct streams are statistically independent for practical purposes and
/// can be generated in any order.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform on [0, 2π).
double uniform_angle(Rng& rng);

/// Uniform integer in [0, bound).
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound);

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
std::complex<double> complex_normal(Rng& rng);

}  // namespace tdesign
