#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "isingpf/linalg.hpp"

namespace testutil {

using isingpf::Complex;
using isingpf::ComplexMatrix;
using isingpf::RealVector;

// Deterministic generators: every test seeds its own engine so cases stay
// independent of execution order.

inline ComplexMatrix random_matrix(std::mt19937& rng, int dim, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = Complex(dist(rng), dist(rng));
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937& rng, int dim,
                                      double scale = 1.0) {
    const ComplexMatrix m = random_matrix(rng, dim, scale);
    return 0.5 * (m + m.adjoint());
}

// A random unitary, taken from the eigenvectors of a random Hermitian matrix.
inline ComplexMatrix random_unitary(std::mt19937& rng, int dim) {
    return isingpf::hermitian_eig(random_hermitian(rng, dim)).eigenvectors;
}

inline RealVector random_vector(std::mt19937& rng, int size, double lo,
                                double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    RealVector v(size);
    for (int k = 0; k < size; ++k) v[k] = dist(rng);
    return v;
}

// Least-squares slope of log(y) against log(x); x and y must be positive.
inline double log_log_slope(const std::vector<double>& x,
                            const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        num += dx * (std::log(y[i]) - my);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace testutil
