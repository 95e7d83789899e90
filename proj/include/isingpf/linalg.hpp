#pragma once

#include <complex>

#include <Eigen/Dense>

#include "isingpf/errors.hpp"

namespace isingpf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Hard cap on matrix dimension (12 spins).  Anything larger is rejected up
// front instead of letting a dense allocation blow up the process.
inline constexpr Eigen::Index kDimensionCap = 4096;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);

// Kronecker product of two square matrices.  Entry convention:
// out(i1*db + i2, j1*db + j2) = a(i1, j1) * b(i2, j2).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // unitary; column k pairs with eigenvalues[k]
};

// Eigendecomposition of a Hermitian matrix.  Throws NotHermitian if the
// input deviates from its adjoint by more than kHermitianTol, and
// ConvergenceFailure if the solver does not converge.
EigenSystem hermitian_eig(const ComplexMatrix& m);

// exp(sign * i * t * h) for Hermitian h, evaluated through the
// eigendecomposition.  sign = -1 gives the forward evolution exp(-i t h).
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t, int sign);

// Unitary diag(exp(-i t d_k)) for a real diagonal d.
ComplexMatrix diag_expm(const RealVector& diagonal, double t);

}  // namespace isingpf
