#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tnlab/symbol.hpp"

namespace tnlab {

using DenseComplexMatrix = Eigen::MatrixXcd;

/// N x N matrix with entry (j, k) = a_{j-k}, j, k in [0, N).
DenseComplexMatrix build_toeplitz(const Symbol& symbol, int n);

/// Circulant of the truncated symbol p_N on Z/(N+M)Z together with its
/// restriction to I_N = [0, N).
struct CirculantEmbedding {
  int n = 0;
  int m = 0;
  /// (N+M) x (N+M), entry (j, k) = sum_{nu = j-k mod N+M, |nu| <= N} a_nu.
  DenseComplexMatrix full;
  /// Leading N x N block of `full`.
  DenseComplexMatrix toeplitz_block;

  [[nodiscard]] int dim() const { return n + m; }
};

CirculantEmbedding build_circulant(const Symbol& symbol, int n, int m);

/// lambda_j = p_N(e^{-2 pi i j / (N+M)}), j = 1..N+M: the eigenvalues of
/// build_circulant(symbol, n, m).full.
std::vector<Complex> circulant_spectrum(const Symbol& symbol, int n, int m);

/// eps(M) = 2 C sum_{k >= M} (k + 1 - M) m(k). The series is summed directly
/// and closed with an integral bound, so the result never undershoots.
double epsilon_bound(const Symbol& symbol, int m);

struct TraceNormDifference {
  double computed = 0.0;  // || P_N - toeplitz_block ||_tr
  double bound = 0.0;     // eps(M)
};

TraceNormDifference trace_norm_difference(const Symbol& symbol, int n, int m);

/// An N x N matrix of i.i.d. standard complex Gaussians (E|q|^2 = 1).
struct GaussianSample {
  int n = 0;
  std::uint64_t seed = 0;
  DenseComplexMatrix q;
  double hs_norm = 0.0;

  /// ||Q||_HS <= factor * N, the event the determinant estimates condition on.
  [[nodiscard]] bool within_hs_bound(double factor = kDefaultHsFactor) const { return hs_norm <= factor * n; }
  static constexpr double kDefaultHsFactor = 1.4142135623730951;
};

/// Deterministic in (n, seed); entries drawn row-major.
GaussianSample sample_gaussian(int n, std::uint64_t seed);

/// P + delta Q. Throws DimensionMismatch, InvalidArgument for delta < 0.
DenseComplexMatrix perturb(const DenseComplexMatrix& p, const DenseComplexMatrix& q, double delta);

}  // namespace tnlab
