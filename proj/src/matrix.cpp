#include "tnlab/matrix.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tnlab/errors.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/rng.hpp"

namespace tnlab {

namespace {

void require_positive(int value, const char* name) {
  if (value < 1) throw InvalidArgument(std::string(name) + " must be >= 1, got " + std::to_string(value));
}

}  // namespace

DenseComplexMatrix build_toeplitz(const Symbol& symbol, int n) {
  require_positive(n, "N");
  std::vector<Complex> diag(2 * static_cast<std::size_t>(n) - 1);
  for (int d = -(n - 1); d <= n - 1; ++d) diag[d + n - 1] = symbol.coefficient(d);
  DenseComplexMatrix p(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) p(j, k) = diag[j - k + n - 1];
  return p;
}

CirculantEmbedding build_circulant(const Symbol& symbol, int n, int m) {
  require_positive(n, "N");
  require_positive(m, "M");
  const int dim = n + m;
  std::vector<Complex> folded(dim);
  for (int nu = -n; nu <= n; ++nu) folded[((nu % dim) + dim) % dim] += symbol.coefficient(nu);

  CirculantEmbedding c;
  c.n = n;
  c.m = m;
  c.full.resize(dim, dim);
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j < dim; ++j) c.full(j, k) = folded[((j - k) % dim + dim) % dim];
  c.toeplitz_block = c.full.topLeftCorner(n, n);
  return c;
}

std::vector<Complex> circulant_spectrum(const Symbol& symbol, int n, int m) {
  require_positive(n, "N");
  require_positive(m, "M");
  const int dim = n + m;
  std::vector<Complex> lambda(dim);
  for (int j = 1; j <= dim; ++j)
    lambda[j - 1] = symbol.eval(2.0 * std::numbers::pi * static_cast<double>(j) / dim, n);
  return lambda;
}

double epsilon_bound(const Symbol& symbol, int m) {
  require_positive(m, "M");
  const double c = symbol.envelope_constant();
  if (c == 0.0) return 0.0;

  if (symbol.tail().empty()) {
    // m(k) is the indicator of |k| <= radius
    double sum = 0.0;
    for (int k = m; k <= symbol.band().radius(); ++k) sum += k + 1.0 - m;
    return 2.0 * c * sum;
  }

  const double s = symbol.tail().min_exponent();
  const double shift = 1.0 - m;
  auto term = [&](double k) { return (k + shift) * std::pow(k, -s); };
  // (x + 1 - M) x^{-s} is decreasing beyond x0
  const double x0 = s * (m - 1.0) / (s - 1.0);
  auto remainder = [&](double k) { return std::pow(k, 2.0 - s) / (s - 2.0) + shift * std::pow(k, 1.0 - s) / (s - 1.0); };

  constexpr long kMaxTerms = 1L << 24;
  long k = m;
  long upto = std::max<long>(2L * m + 64, static_cast<long>(std::ceil(x0)) + 1);
  double sum = 0.0;
  while (true) {
    for (; k <= upto; ++k) sum += term(static_cast<double>(k));
    const double rest = remainder(static_cast<double>(upto));
    if (rest <= 1e-15 * sum || upto - m >= kMaxTerms) {
      sum += std::max(rest, 0.0);
      break;
    }
    upto *= 2;
  }
  return 2.0 * c * sum;
}

TraceNormDifference trace_norm_difference(const Symbol& symbol, int n, int m) {
  const auto embedding = build_circulant(symbol, n, m);
  const DenseComplexMatrix diff = build_toeplitz(symbol, n) - embedding.toeplitz_block;
  TraceNormDifference result;
  for (double sv : singular_values(diff)) result.computed += sv;
  result.bound = epsilon_bound(symbol, m);
  return result;
}

GaussianSample sample_gaussian(int n, std::uint64_t seed) {
  require_positive(n, "N");
  GaussianSource source(seed);
  GaussianSample sample;
  sample.n = n;
  sample.seed = seed;
  sample.q.resize(n, n);
  double hs2 = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Complex q = source.complex_normal();
      sample.q(j, k) = q;
      hs2 += std::norm(q);
    }
  sample.hs_norm = std::sqrt(hs2);
  return sample;
}

DenseComplexMatrix perturb(const DenseComplexMatrix& p, const DenseComplexMatrix& q, double delta) {
  if (p.rows() != q.rows() || p.cols() != q.cols())
    throw DimensionMismatch("perturb: " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + " vs " +
                            std::to_string(q.rows()) + "x" + std::to_string(q.cols()));
  if (!(delta >= 0.0)) throw InvalidArgument("perturb: delta must be >= 0");
  return p + delta * q;
}

}  // namespace tnlab
