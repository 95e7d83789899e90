#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "isingpf/linalg.hpp"
#include "helpers.hpp"

using namespace isingpf;
using testutil::log_log_slope;
using testutil::random_hermitian;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

TEST_CASE("kron reproduces the block layout") {
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(kron(id2, id2) - ComplexMatrix::Identity(4, 4)) == 0.0);

    // X (x) Z has Z blocks on the anti-diagonal.
    ComplexMatrix expected(4, 4);
    expected.setZero();
    expected.block(0, 2, 2, 2) = pauli_z();
    expected.block(2, 0, 2, 2) = pauli_z();
    CHECK(max_abs(kron(pauli_x(), pauli_z()) - expected) == 0.0);
}

TEST_CASE("kron embedding acts on basis states like the factors") {
    // Z (x) Z (x) I on three sites: basis state b picks up the product of the
    // Z signs of the first two bits (bit 2 is the leftmost factor).
    const ComplexMatrix m = kron(kron(pauli_z(), pauli_z()),
                                 ComplexMatrix::Identity(2, 2));
    for (int b = 0; b < 8; ++b) {
        const double s1 = (b & 4) ? -1.0 : 1.0;
        const double s2 = (b & 2) ? -1.0 : 1.0;
        ComplexVector basis = ComplexVector::Zero(8);
        basis[b] = 1.0;
        const ComplexVector image = m * basis;
        for (int i = 0; i < 8; ++i) {
            const Complex expected = (i == b) ? Complex(s1 * s2, 0) : Complex(0, 0);
            CHECK(std::abs(image[i] - expected) == 0.0);
        }
    }
}

TEST_CASE("kron is associative") {
    // Exact for operators with small-integer entries.
    const ComplexMatrix a = pauli_x();
    const ComplexMatrix b = pauli_y();
    const ComplexMatrix c = pauli_z();
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) == 0.0);

    // Random entries only differ by multiplication rounding order.
    std::mt19937 rng(2024);
    const ComplexMatrix r1 = testutil::random_matrix(rng, 2);
    const ComplexMatrix r2 = testutil::random_matrix(rng, 3);
    const ComplexMatrix r3 = testutil::random_matrix(rng, 2);
    CHECK(max_abs(kron(kron(r1, r2), r3) - kron(r1, kron(r2, r3))) < 1e-15);
}

TEST_CASE("kron rejects outputs beyond the dimension cap") {
    const ComplexMatrix a = ComplexMatrix::Identity(64, 64);
    const ComplexMatrix b = ComplexMatrix::Identity(128, 128);
    CHECK(kron(a, a).rows() == 4096);  // exactly at the cap
    CHECK_THROWS_AS(kron(a, b), DimensionCapExceeded);
}

TEST_CASE("kron requires square factors") {
    ComplexMatrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(kron(rect, pauli_z()), DimensionMismatch);
}

TEST_CASE("hermitian_eig solves the Pauli eigensystems") {
    const EigenSystem z = hermitian_eig(pauli_z());
    CHECK(z.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(z.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    // Ascending order puts the -1 eigenvector (second basis vector) first.
    CHECK(std::abs(z.eigenvectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(z.eigenvectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));

    const EigenSystem x = hermitian_eig(pauli_x());
    CHECK(x.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    // Eigenvector of -1 is (1, -1)/sqrt(2) up to phase.
    const Complex ratio = x.eigenvectors(1, 0) / x.eigenvectors(0, 0);
    CHECK(std::abs(ratio - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(x.eigenvectors(0, 0)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hermitian_eig reconstructs a two-site chain Hamiltonian") {
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix h = kron(pauli_z(), pauli_z()) +
                            0.2 * (kron(pauli_z(), id2) + kron(id2, pauli_z())) +
                            0.3 * (kron(pauli_x(), id2) + kron(id2, pauli_x()));
    const EigenSystem sys = hermitian_eig(h);
    for (int k = 1; k < 4; ++k) {
        CHECK(sys.eigenvalues[k] >= sys.eigenvalues[k - 1]);
    }
    const ComplexMatrix rebuilt = sys.eigenvectors *
                                  sys.eigenvalues.cast<Complex>().asDiagonal() *
                                  sys.eigenvectors.adjoint();
    CHECK(max_abs(rebuilt - h) < 1e-10);
    CHECK(is_unitary(sys.eigenvectors));
}

TEST_CASE("hermitian_eig matches the quadratic formula on 2x2 inputs") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double a = dist(rng);
        const double d = dist(rng);
        const Complex b(dist(rng), dist(rng));
        ComplexMatrix m(2, 2);
        m << Complex(a, 0), b, std::conj(b), Complex(d, 0);
        const double mean = 0.5 * (a + d);
        const double radius =
            std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
        const EigenSystem sys = hermitian_eig(m);
        CHECK(sys.eigenvalues[0] == doctest::Approx(mean - radius).epsilon(1e-12));
        CHECK(sys.eigenvalues[1] == doctest::Approx(mean + radius).epsilon(1e-12));
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m << 1, Complex(0, 1), Complex(0, 1), 1;  // symmetric, not Hermitian
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("expm_hermitian pins the sign convention") {
    // Forward evolution under Z for a half period flips the phase globally.
    const ComplexMatrix half_turn = expm_hermitian(pauli_z(), kPi, -1);
    CHECK(max_abs(half_turn + ComplexMatrix::Identity(2, 2)) < 1e-13);

    // Forward evolution under X for a quarter period gives -i X.
    const ComplexMatrix quarter = expm_hermitian(pauli_x(), kPi / 2.0, -1);
    CHECK(max_abs(quarter - Complex(0, -1) * pauli_x()) < 1e-13);

    // sign = +1 is the inverse of sign = -1.
    std::mt19937 rng(31);
    const ComplexMatrix h = random_hermitian(rng, 6);
    const ComplexMatrix forward = expm_hermitian(h, 0.7, -1);
    const ComplexMatrix backward = expm_hermitian(h, 0.7, +1);
    CHECK(max_abs(forward * backward - ComplexMatrix::Identity(6, 6)) < 1e-12);
}

TEST_CASE("expm_hermitian at t = 0 is the exact identity") {
    std::mt19937 rng(32);
    const ComplexMatrix h = random_hermitian(rng, 8);
    CHECK(max_abs(expm_hermitian(h, 0.0, -1) -
                  ComplexMatrix::Identity(8, 8)) <= 1e-14);
}

TEST_CASE("expm_hermitian outputs are unitary and compose over time") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix h = random_hermitian(rng, 8);
        const double s = dist(rng);
        const double t = dist(rng);
        const ComplexMatrix us = expm_hermitian(h, s, -1);
        const ComplexMatrix ut = expm_hermitian(h, t, -1);
        const ComplexMatrix ust = expm_hermitian(h, s + t, -1);
        CHECK(is_unitary(us));
        CHECK(max_abs(us * ut - ust) < 1e-10);
    }
}

TEST_CASE("expm_hermitian validates the sign argument") {
    CHECK_THROWS_AS(expm_hermitian(pauli_z(), 1.0, 2), ValidationError);
}

TEST_CASE("diag_expm matches the dense route on diagonal input") {
    RealVector d(4);
    d << 0.3, -1.2, 2.0, 0.0;
    ComplexMatrix dense = ComplexMatrix::Zero(4, 4);
    dense.diagonal() = d.cast<Complex>();
    for (double t : {0.0, 0.4, -1.1, 3.0}) {
        CHECK(max_abs(diag_expm(d, t) - expm_hermitian(dense, t, -1)) < 1e-12);
    }

    // Zero diagonal gives the identity for any t.
    CHECK(max_abs(diag_expm(RealVector::Zero(4), 17.3) -
                  ComplexMatrix::Identity(4, 4)) == 0.0);
}
