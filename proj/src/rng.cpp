#include "tnlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace tnlab {

double GaussianSource::uniform_open_closed() {
  // 53 random bits; (k + 1) / 2^53 lies in (0, 1]
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 1.0) * 0x1.0p-53;
}

std::complex<double> GaussianSource::complex_normal() {
  const double u1 = uniform_open_closed();
  const double u2 = uniform_open_closed();
  // |q|^2 = -ln u1 is Exp(1), so each component has variance 1/2
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return std::polar(radius, angle);
}

}  // namespace tnlab
