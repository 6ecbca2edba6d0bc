#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tnlab/errors.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/rng.hpp"

using namespace tnlab;
using namespace std::complex_literals;

namespace {

DenseComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
  GaussianSource src(seed);
  DenseComplexMatrix a(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) a(j, k) = src.complex_normal();
  return a;
}

DenseComplexMatrix random_unitary_diagonal(int n, std::uint64_t seed) {
  GaussianSource src(seed);
  DenseComplexMatrix d = DenseComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = std::polar(1.0, 2 * std::numbers::pi * src.uniform_open_closed());
  return d;
}

}  // namespace

TEST_CASE("eigenvalues: scalar matrix, nilpotent shift, tridiagonal Toeplitz") {
  const Complex c = 2.0 - 1.0i;
  const auto scalar = eigenvalues(c * DenseComplexMatrix::Identity(3, 3));
  REQUIRE(scalar.eigenvalues.size() == 3);
  for (const Complex& l : scalar.eigenvalues) CHECK(std::abs(l - c) < 1e-14);
  CHECK(!scalar.backend_info.empty());

  for (const Complex& l : eigenvalues(build_toeplitz(presets::jordan(), 40)).eigenvalues) CHECK(std::abs(l) == 0.0);

  const auto tri = eigenvalues(build_toeplitz(presets::bidiagonal(1.0, 1.0), 4));
  std::vector<Complex> expected;
  for (int k = 1; k <= 4; ++k) expected.emplace_back(2 * std::cos(k * std::numbers::pi / 5), 0.0);
  CHECK(matching_distance(tri.eigenvalues, expected) < 1e-13);
}

TEST_CASE("product of |eigenvalues| equals |det|") {
  for (int n : {1, 2, 5, 16, 64, 128}) {
    const auto a = random_matrix(n, n, 100 + n);
    double sum = 0.0;
    for (const Complex& l : eigenvalues(a).eigenvalues) sum += std::log(std::abs(l));
    CHECK(std::abs(sum - log_abs_det(a)) <= 1e-8);
  }
}

TEST_CASE("eigenvalues are invariant under similarity") {
  for (int n : {4, 16, 32, 64}) {
    const auto a = random_matrix(n, n, 7 * n);
    const DenseComplexMatrix s = DenseComplexMatrix::Identity(n, n) + 0.1 / std::sqrt(n) * random_matrix(n, n, 9 * n);
    const DenseComplexMatrix b = s * a * s.inverse();
    CHECK(matching_distance(eigenvalues(a).eigenvalues, eigenvalues(b).eigenvalues) < 1e-8);
  }
}

TEST_CASE("singular values: scalar and rank one") {
  const auto s = singular_values((3.0 + 4.0i) * DenseComplexMatrix::Identity(3, 3));
  for (double v : s) CHECK(v == doctest::Approx(5.0));

  Eigen::VectorXcd u(4), v(3);
  u << 1.0, 2.0i, -1.0, 0.5;
  v << 2.0, 1.0 - 1.0i, 0.0;
  const auto r = singular_values(u * v.adjoint());
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(u.norm() * v.norm()).epsilon(1e-14));
  CHECK(r[1] < 1e-14);
  CHECK(r[2] < 1e-14);
}

TEST_CASE("singular values against the Hermitian eigensolver of A^* A") {
  const auto a = random_matrix(8, 8, 5);
  const auto s = singular_values(a);
  Eigen::SelfAdjointEigenSolver<DenseComplexMatrix> es(a.adjoint() * a);
  std::vector<double> oracle;
  for (int j = 0; j < 8; ++j) oracle.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(j))));
  std::sort(oracle.rbegin(), oracle.rend());
  REQUIRE(s.size() == 8);
  CHECK(std::is_sorted(s.rbegin(), s.rend()));
  for (int j = 0; j < 8; ++j) CHECK(std::abs(s[j] - oracle[j]) < 1e-10);
}

TEST_CASE("singular values are unitarily invariant") {
  for (auto [rows, cols] : {std::pair{6, 6}, std::pair{10, 4}, std::pair{3, 9}}) {
    const auto a = random_matrix(rows, cols, rows * 31 + cols);
    const DenseComplexMatrix b = random_unitary_diagonal(rows, 1) * a * random_unitary_diagonal(cols, 2);
    const auto sa = singular_values(a);
    const auto sb = singular_values(b);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t j = 0; j < sa.size(); ++j) CHECK(std::abs(sa[j] - sb[j]) < 1e-10);
  }
}

TEST_CASE("thin SVD reconstructs the matrix") {
  const auto a = random_matrix(7, 5, 77);
  const auto d = svd(a);
  Eigen::VectorXd s(d.s.size());
  for (std::size_t j = 0; j < d.s.size(); ++j) s(j) = d.s[j];
  CHECK((d.u * s.cast<Complex>().asDiagonal() * d.v.adjoint() - a).norm() < 1e-12);
}

TEST_CASE("log_abs_det examples") {
  CHECK(log_abs_det(DenseComplexMatrix::Identity(9, 9)) == 0.0);
  DenseComplexMatrix d = DenseComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0i;
  CHECK(log_abs_det(d) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  const DenseComplexMatrix shifted =
      build_toeplitz(presets::jordan(), 16) - 0.5 * DenseComplexMatrix::Identity(16, 16);
  CHECK(log_abs_det(shifted) == doctest::Approx(16 * std::log(0.5)).epsilon(1e-14));
  CHECK(log_abs_det(DenseComplexMatrix::Zero(3, 3)) == -INFINITY);
  CHECK(log_abs_det(DenseComplexMatrix(0, 0)) == 0.0);
}

TEST_CASE("solve examples") {
  const auto b = random_matrix(5, 3, 4);
  CHECK((solve(DenseComplexMatrix::Identity(5, 5), b) - b).norm() < 1e-15);

  const DenseComplexMatrix a = DenseComplexMatrix::Identity(16, 16) * 4.0 + random_matrix(16, 16, 12);
  CHECK((solve(a, a) - DenseComplexMatrix::Identity(16, 16)).norm() < 1e-12);

  DenseComplexMatrix d = DenseComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const auto x = solve(d, DenseComplexMatrix::Identity(2, 2));
  CHECK(x(0, 0) == 0.5 + 0i);
  CHECK(x(1, 1) == 0.25 + 0i);
  CHECK(x(0, 1) == 0.0 + 0i);

  CHECK_THROWS_AS(solve(DenseComplexMatrix::Zero(3, 3), b.topRows(3)), SingularMatrix);
  CHECK_THROWS_AS(solve(a, b), DimensionMismatch);
}

TEST_CASE("norms") {
  DenseComplexMatrix d = DenseComplexMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0i;
  d(2, 2) = 1.0;
  CHECK(operator_norm(d) == doctest::Approx(4.0));
  CHECK(hs_norm(d) == doctest::Approx(std::sqrt(26.0)));
  CHECK(trace_norm(d) == doctest::Approx(8.0));
  CHECK(operator_norm(DenseComplexMatrix(0, 0)) == 0.0);
}

TEST_CASE("matching distance") {
  std::vector<Complex> a{0.0, 1.0, 1.0i};
  std::vector<Complex> b{1.0i + 1e-3, 1.0, 0.0};
  CHECK(matching_distance(a, b) == doctest::Approx(1e-3));
  CHECK(matching_distance(a, {0.0}) == INFINITY);
}
