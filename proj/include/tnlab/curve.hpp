#pragma once

// Geometry of the symbol curve theta -> p(e^{-i theta}), theta in [0, 2 pi).

#include <cstddef>
#include <functional>
#include <vector>

#include "tnlab/symbol.hpp"

namespace tnlab {

/// Values p(e^{-i theta_j}) on theta_j = 2 pi j / points, computed exactly
/// (up to rounding) for the truncated series by folding the coefficients
/// modulo `points` and taking one DFT.
std::vector<Complex> sample_curve(const Symbol& symbol, std::size_t points,
                                  int truncation = kFullSymbol);

/// Winding number of the closed curve t -> curve(t), t in [0, period), about
/// z, by summed argument increments. Intervals whose increment exceeds pi/2
/// are bisected; throws NonConvergent past `max_samples` evaluations.
/// `samples` holds curve values on the uniform grid of the period.
int argument_winding(const std::function<Complex(double)>& curve, double period,
                     const std::vector<Complex>& samples, Complex z,
                     std::size_t max_samples = std::size_t{1} << 24);

/// Cached uniform sampling of a symbol curve, reused for many queries.
class SymbolCurve {
 public:
  /// grid_size >= 64.
  SymbolCurve(const Symbol& symbol, std::size_t grid_size, int truncation = kFullSymbol);

  [[nodiscard]] const Symbol& symbol() const { return symbol_; }
  [[nodiscard]] const std::vector<Complex>& samples() const { return samples_; }
  [[nodiscard]] std::size_t grid_size() const { return samples_.size(); }
  [[nodiscard]] double theta(std::size_t j) const;

  /// min_theta |z - p(e^{-i theta})|: grid minimum followed by a golden-section
  /// refinement around the best local minima.
  [[nodiscard]] double distance(Complex z) const;
  /// Parameter of the closest curve point found by distance().
  [[nodiscard]] double closest_theta(Complex z) const;

  /// Index of the curve about z. Throws PointOnCurve when distance(z) is
  /// below 1e-10 (1 + |z|).
  [[nodiscard]] int winding(Complex z) const;

  /// Largest distance between two curve points (on a subsample of <= 4096).
  [[nodiscard]] double diameter() const;

 private:
  Symbol symbol_;
  int truncation_;
  std::vector<Complex> samples_;
};

/// Index of p(S^1) about z for the parametrization theta -> p(e^{-i theta}).
int winding_number(const Symbol& symbol, Complex z, std::size_t grid_size = 4096);

/// dist(z, p(S^1)).
double curve_distance(const Symbol& symbol, Complex z, std::size_t grid_size = 4096);

}  // namespace tnlab
