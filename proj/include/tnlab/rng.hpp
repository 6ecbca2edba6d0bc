#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace tnlab {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under master seed `seed`: mix64(seed ^ mix64(index)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return mix64(seed ^ mix64(index)); }

/// Reproducible source of standard complex Gaussians.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Normal variates use Box-Muller written out here, because
/// std::normal_distribution is implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform in (0, 1].
  double uniform_open_closed();

  /// Real and imaginary parts independent N(0, 1/2).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace tnlab
