#include "tnlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "tnlab/errors.hpp"

namespace tnlab {

SpectrumResult eigenvalues(const DenseComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DimensionMismatch("eigenvalues: matrix must be square and non-empty");
  Eigen::ComplexEigenSolver<DenseComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("eigenvalues: QR iteration did not converge");
  SpectrumResult result;
  const auto& values = solver.eigenvalues();
  result.eigenvalues.assign(values.data(), values.data() + values.size());
  result.backend_info = "eigen3 ComplexEigenSolver (Hessenberg + shifted QR)";
  return result;
}

std::vector<double> singular_values(const DenseComplexMatrix& a) {
  if (a.size() == 0) return {};
  Eigen::BDCSVD<DenseComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("singular_values: SVD did not converge");
  const auto& s = solver.singularValues();
  return {s.data(), s.data() + s.size()};
}

SvdResult svd(const DenseComplexMatrix& a) {
  SvdResult result;
  if (a.size() == 0) {
    result.u.resize(a.rows(), 0);
    result.v.resize(a.cols(), 0);
    return result;
  }
  Eigen::BDCSVD<DenseComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("svd: did not converge");
  const auto& s = solver.singularValues();
  result.s.assign(s.data(), s.data() + s.size());
  result.u = solver.matrixU();
  result.v = solver.matrixV();
  return result;
}

double log_abs_det(const DenseComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("log_abs_det: matrix must be square");
  if (a.rows() == 0) return 0.0;
  Eigen::PartialPivLU<DenseComplexMatrix> lu(a);
  const auto& packed = lu.matrixLU();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double pivot = std::abs(packed(i, i));
    if (!(pivot >= 1e-300)) return -std::numeric_limits<double>::infinity();
    sum += std::log(pivot);
  }
  return sum;
}

DenseComplexMatrix solve(const DenseComplexMatrix& a, const DenseComplexMatrix& b) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve: matrix must be square");
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: right-hand side has the wrong number of rows");
  if (a.rows() == 0) return DenseComplexMatrix(0, b.cols());
  Eigen::PartialPivLU<DenseComplexMatrix> lu(a);
  const auto& packed = lu.matrixLU();
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    largest = std::max(largest, std::abs(packed(i, i)));
    smallest = std::min(smallest, std::abs(packed(i, i)));
  }
  if (!(smallest > std::numeric_limits<double>::epsilon() * largest) || smallest < 1e-300)
    throw SingularMatrix("solve: matrix is numerically singular");
  return lu.solve(b);
}

double operator_norm(const DenseComplexMatrix& a) {
  const auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

double hs_norm(const DenseComplexMatrix& a) { return a.norm(); }

double trace_norm(const DenseComplexMatrix& a) {
  double sum = 0.0;
  for (double s : singular_values(a)) sum += s;
  return sum;
}

double matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace tnlab
