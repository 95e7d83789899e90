#include "isingpf/linalg.hpp"

#include <cmath>
#include <string>

namespace isingpf {

namespace {

void require_square(const ComplexMatrix& m, const char* context) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch(std::string(context) + ": matrix is " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
    }
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const ComplexMatrix gram = m * m.adjoint();
    return max_abs(gram - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "kron");
    require_square(b, "kron");
    const Eigen::Index da = a.rows();
    const Eigen::Index db = b.rows();
    if (da * db > kDimensionCap) {
        throw DimensionCapExceeded("kron: product dimension " +
                                   std::to_string(da * db) + " exceeds cap " +
                                   std::to_string(kDimensionCap));
    }
    ComplexMatrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a(i, j) * b;
        }
    }
    return out;
}

EigenSystem hermitian_eig(const ComplexMatrix& m) {
    require_square(m, "hermitian_eig");
    if (m.rows() > kDimensionCap) {
        throw DimensionCapExceeded("hermitian_eig: dimension " +
                                   std::to_string(m.rows()) + " exceeds cap " +
                                   std::to_string(kDimensionCap));
    }
    if (!is_hermitian(m)) {
        throw NotHermitian(
            "hermitian_eig: input deviates from its adjoint by more than " +
            std::to_string(kHermitianTol));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("hermitian_eig: eigensolver did not converge");
    }
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t, int sign) {
    if (sign != 1 && sign != -1) {
        throw ValidationError("expm_hermitian: sign must be +1 or -1, got " +
                              std::to_string(sign));
    }
    const EigenSystem sys = hermitian_eig(h);
    if (t == 0.0) {
        return ComplexMatrix::Identity(h.rows(), h.cols());
    }
    ComplexVector phases(sys.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        const double angle = sign * t * sys.eigenvalues[k];
        phases[k] = Complex(std::cos(angle), std::sin(angle));
    }
    return sys.eigenvectors * (phases.asDiagonal() * sys.eigenvectors.adjoint());
}

ComplexMatrix diag_expm(const RealVector& diagonal, double t) {
    const Eigen::Index n = diagonal.size();
    if (n > kDimensionCap) {
        throw DimensionCapExceeded("diag_expm: dimension " + std::to_string(n) +
                                   " exceeds cap " + std::to_string(kDimensionCap));
    }
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double angle = -t * diagonal[k];
        out(k, k) = Complex(std::cos(angle), std::sin(angle));
    }
    return out;
}

}  // namespace isingpf
