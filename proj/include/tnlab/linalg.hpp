#pragma once

// Dense complex kernels shared by every other module.

#include <string>
#include <vector>

#include "tnlab/matrix.hpp"

namespace tnlab {

struct SpectrumResult {
  std::vector<Complex> eigenvalues;  // with algebraic multiplicity
  std::string backend_info;
};

/// All eigenvalues of a square matrix (Hessenberg reduction + shifted QR).
/// Throws ConvergenceFailure when the iteration cap is reached.
SpectrumResult eigenvalues(const DenseComplexMatrix& a);

/// Singular values, descending.
std::vector<double> singular_values(const DenseComplexMatrix& a);

/// Thin SVD a = U diag(s) V^*, s descending.
struct SvdResult {
  DenseComplexMatrix u;
  std::vector<double> s;
  DenseComplexMatrix v;
};
SvdResult svd(const DenseComplexMatrix& a);

/// ln |det a| from the pivots of a partially pivoted LU factorization.
/// Returns -infinity when a pivot falls below 1e-300. The empty matrix has
/// determinant 1.
double log_abs_det(const DenseComplexMatrix& a);

/// X with a X = b. Throws SingularMatrix when a pivot is (numerically) zero
/// and DimensionMismatch for non-conformable inputs.
DenseComplexMatrix solve(const DenseComplexMatrix& a, const DenseComplexMatrix& b);

/// Largest singular value, 0 for empty matrices.
double operator_norm(const DenseComplexMatrix& a);
double hs_norm(const DenseComplexMatrix& a);
double trace_norm(const DenseComplexMatrix& a);

/// Greedy nearest-neighbour matching of two multisets of equal size; returns
/// the largest matched distance (+inf on a size mismatch).
double matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace tnlab
