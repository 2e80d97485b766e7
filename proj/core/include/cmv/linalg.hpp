#pragma once

#include <vector>

#include "cmv/matrix.hpp"

namespace cmv {

/// Default absolute tolerance; callers scale it by max(1, ‖A‖) where a
/// relative test is wanted.
inline constexpr double default_tol = 1e-10;

struct HermitianEigen {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns are orthonormal eigenvectors
};

struct UnitaryEigen {
    std::vector<complex> nodes; // unimodular
    ComplexMatrix vectors;      // columns are orthonormal eigenvectors
};

/// Largest singular value of A, via the largest eigenvalue of A*A.
double op_norm(const ComplexMatrix& a);

/// Full spectral decomposition of a Hermitian matrix by cyclic Jacobi
/// rotations. Throws NotHermitian / NoConvergence.
HermitianEigen herm_eigen(const ComplexMatrix& a, double tol = default_tol);

/// Unique PSD square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol, 0) are clamped to zero; below -tol throws NotPSD.
ComplexMatrix herm_sqrt(const ComplexMatrix& a, double tol = default_tol);

/// Eigendecomposition of a unitary matrix through a randomized-phase Cayley
/// transform to a Hermitian problem. Throws NotUnitary / CayleyDegenerate.
UnitaryEigen unitary_eigen(const ComplexMatrix& u, double tol = default_tol);

/// X with A X = B by partial-pivot Gaussian elimination.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix inverse(const ComplexMatrix& a);

/// 1-norm condition estimate ‖A‖₁·‖A⁻¹‖₁; +inf when A is numerically singular.
double condition_estimate(const ComplexMatrix& a);

} // namespace cmv
