#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tnlab/errors.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/matrix.hpp"

using namespace tnlab;
using namespace std::complex_literals;

namespace {

Complex truncated(const Symbol& s, int nu, int n) { return std::abs(nu) <= n ? s.coefficient(nu) : 0.0; }

}  // namespace

TEST_CASE("Toeplitz examples") {
  const Complex c = 1.5 - 2.0i;
  const auto diag = build_toeplitz(Symbol(BandCoefficients{{0, c}}, {}), 3);
  CHECK((diag - c * DenseComplexMatrix::Identity(3, 3)).norm() == 0.0);

  const auto shift = build_toeplitz(presets::jordan(), 3);
  DenseComplexMatrix expected = DenseComplexMatrix::Zero(3, 3);
  expected(1, 0) = 1.0;
  expected(2, 1) = 1.0;
  CHECK((shift - expected).norm() == 0.0);

  CHECK(build_toeplitz(presets::exp1_band(), 10)(0, 4) == 1.0i);
}

TEST_CASE("Toeplitz matrices are constant along diagonals") {
  const Symbol s = presets::exp1();
  const auto p = build_toeplitz(s, 20);
  for (int j = 0; j + 1 < 20; ++j)
    for (int k = 0; k + 1 < 20; ++k) CHECK(p(j, k) == p(j + 1, k + 1));
  for (int j = 0; j < 20; ++j)
    for (int k = 0; k < 20; ++k) CHECK(p(j, k) == s.coefficient(j - k));
}

TEST_CASE("circulant of the shift") {
  const auto emb = build_circulant(presets::jordan(), 3, 2);
  CHECK(emb.dim() == 5);
  DenseComplexMatrix cyclic = DenseComplexMatrix::Zero(5, 5);
  for (int j = 0; j < 5; ++j) cyclic(j, (j + 4) % 5) = 1.0;
  CHECK((emb.full - cyclic).norm() == 0.0);
  CHECK((emb.toeplitz_block - build_toeplitz(presets::jordan(), 3)).norm() == 0.0);
}

TEST_CASE("circulant wrap-around by direct summation") {
  const Symbol s = presets::bidiagonal(1.0, 1.0);
  const auto emb = build_circulant(s, 4, 1);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      Complex sum = 0.0;
      for (int nu = -4; nu <= 4; ++nu)
        if (((nu - (j - k)) % 5 + 5) % 5 == 0) sum += truncated(s, nu, 4);
      CHECK(emb.toeplitz_block(j, k) == sum);
    }
  // corner entries of the full circulant carry the wrapped a_{-1}, a_{+1}
  CHECK(emb.full(0, 4) == 1.0 + 0i);
  CHECK(emb.full(4, 0) == 1.0 + 0i);
}

TEST_CASE("circulant entries depend only on j - k mod N+M and rows sum to p_N(1)") {
  const Symbol s = presets::exp1();
  for (auto [n, m] : {std::pair{6, 3}, std::pair{12, 5}, std::pair{20, 8}}) {
    const auto emb = build_circulant(s, n, m);
    const int d = n + m;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) CHECK(std::abs(emb.full(j, k) - emb.full((j + 1) % d, (k + 1) % d)) < 1e-15);
    Complex total = 0.0;
    for (int nu = -n; nu <= n; ++nu) total += s.coefficient(nu);
    for (int j = 0; j < d; ++j) CHECK(std::abs(emb.full.row(j).sum() - total) < 1e-12);
  }
}

TEST_CASE("block minus Toeplitz matrix equals the two wrap terms") {
  const Symbol s = presets::exp1();
  for (auto [n, m] : {std::pair{12, 3}, std::pair{9, 1}, std::pair{16, 8}}) {
    const int d = n + m;
    const auto emb = build_circulant(s, n, m);
    const auto p = build_toeplitz(s, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Complex expected = truncated(s, j - d - k, n) + truncated(s, j + d - k, n);
        CHECK(std::abs(emb.toeplitz_block(j, k) - p(j, k) - expected) < 1e-14);
      }
  }
}

TEST_CASE("circulant spectrum examples") {
  const auto roots = circulant_spectrum(presets::jordan(), 3, 1);
  REQUIRE(roots.size() == 4);
  std::vector<Complex> fourth{1.0, 1.0i, -1.0, -1.0i};
  CHECK(matching_distance(roots, fourth) < 1e-15);

  const Complex c = 0.5 + 2.0i;
  for (const Complex& l : circulant_spectrum(Symbol(BandCoefficients{{0, c}}, {}), 5, 3)) CHECK(std::abs(l - c) < 1e-15);
}

TEST_CASE("circulant spectrum equals the eigenvalues of the full circulant") {
  for (const Symbol& s : {presets::exp1(), presets::exp1_2(), presets::jordan()})
    for (auto [n, m] : {std::pair{64, 8}, std::pair{16, 4}, std::pair{33, 31}, std::pair{5, 2}}) {
      const auto emb = build_circulant(s, n, m);
      const auto eig = eigenvalues(emb.full);
      CHECK(matching_distance(eig.eigenvalues, circulant_spectrum(s, n, m)) < 1e-10);
    }
}

TEST_CASE("trace-norm difference of banded symbols vanishes once M exceeds twice the band") {
  for (const Symbol& s : {presets::exp1_band(), presets::exp1_2_band(), presets::jordan()}) {
    const int b = s.band().radius();
    const auto r = trace_norm_difference(s, 32, 2 * b + 1);
    CHECK(r.computed == 0.0);
    CHECK(epsilon_bound(s, 2 * b + 1) == 0.0);
  }
}

TEST_CASE("trace-norm difference of the exp1 tail stays below eps(M)") {
  const Symbol tail(BandCoefficients{}, presets::exp1_tail());
  const auto r = trace_norm_difference(tail, 128, 8);
  CHECK(r.computed > 0.0);
  CHECK(r.bound > 0.0);
  CHECK(r.computed <= r.bound);
}

TEST_CASE("eps(M) dominates the trace-norm difference on a grid") {
  for (const Symbol& s : {presets::exp1(), presets::exp1_2(), presets::bidiagonal(1.0, 1.0)})
    for (int n : {16, 32, 64})
      for (int m : {1, 2, 4, 8}) {
        const auto r = trace_norm_difference(s, n, m);
        CHECK(r.computed <= r.bound * (1 + 1e-12) + 1e-12);
      }
}

TEST_CASE("eps(M) is non-increasing and tends to zero") {
  const Symbol s = presets::exp1();
  double prev = INFINITY;
  for (int m = 1; m <= 4096; m *= 2) {
    const double e = epsilon_bound(s, m);
    CHECK(e <= prev);
    prev = e;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("eps(M) against a long direct sum") {
  const Symbol s = presets::exp1();
  const double c = s.envelope_constant();
  for (int m : {4, 8, 16}) {
    double sum = 0.0;
    for (int k = m; k <= 200000; ++k) sum += (k + 1.0 - m) * s.envelope(k);
    const double e = epsilon_bound(s, m);
    CHECK(e >= 2 * c * sum);
    CHECK(e <= 2 * c * sum * (1 + 1e-6));
  }
}

TEST_CASE("Gaussian samples are deterministic in (N, seed)") {
  const auto a = sample_gaussian(64, 7);
  const auto b = sample_gaussian(64, 7);
  const auto c = sample_gaussian(64, 8);
  CHECK(a.q == b.q);
  CHECK(a.hs_norm == b.hs_norm);
  CHECK(a.q != c.q);
  CHECK(a.hs_norm == doctest::Approx(a.q.norm()).epsilon(1e-14));
}

TEST_CASE("E ||Q||_HS^2 = N^2") {
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = sample_gaussian(64, seed);
    mean += g.hs_norm * g.hs_norm / (64.0 * 64.0);
  }
  mean /= 100;
  CHECK(mean >= 0.95);
  CHECK(mean <= 1.05);
}

TEST_CASE("||Q||_HS <= sqrt(2) N with high frequency") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    if (sample_gaussian(256, seed).within_hs_bound()) ++hits;
  CHECK(hits >= 198);
  CHECK(GaussianSample::kDefaultHsFactor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
  CHECK_FALSE(sample_gaussian(64, 1).within_hs_bound(0.5));
}

TEST_CASE("Gaussian entry moments") {
  const auto g = sample_gaussian(128, 2024);
  const double count = 128.0 * 128.0;
  const Complex mean = g.q.sum() / count;
  const double second = g.q.cwiseAbs2().sum() / count;
  double re2 = 0.0;
  double im2 = 0.0;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < g.q.size(); ++i) {
    re2 += g.q(i).real() * g.q(i).real();
    im2 += g.q(i).imag() * g.q(i).imag();
    cross += g.q(i).real() * g.q(i).imag();
  }
  const double tol = 4.0 / std::sqrt(count);
  CHECK(std::abs(mean) <= tol);
  CHECK(std::abs(second - 1.0) <= tol);
  CHECK(std::abs(re2 / count - 0.5) <= tol);
  CHECK(std::abs(im2 / count - 0.5) <= tol);
  CHECK(std::abs(cross / count) <= tol);
}

TEST_CASE("perturb") {
  const auto p = build_toeplitz(presets::exp1(), 8);
  const auto q = sample_gaussian(8, 3).q;
  CHECK(perturb(p, q, 0.0) == p);
  CHECK(perturb(DenseComplexMatrix::Zero(8, 8), q, 1.0) == q);
  const auto small = perturb(p, q, 1e-14);
  CHECK((small - p).cwiseAbs().maxCoeff() <= 1e-14 * q.cwiseAbs().maxCoeff() * (1 + 1e-12));
  CHECK_THROWS_AS(perturb(p, sample_gaussian(7, 3).q, 1.0), DimensionMismatch);
  CHECK_THROWS_AS(perturb(p, q, -1.0), InvalidArgument);
}
