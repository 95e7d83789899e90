#include "doctest.h"

#include <random>

#include "isingpf/commutator.hpp"
#include "isingpf/model.hpp"
#include "helpers.hpp"

using namespace isingpf;
using testutil::random_hermitian;
using testutil::random_matrix;

namespace {

// Two-site operators for the single-bond commutator identities.
struct BondOperators {
    ComplexMatrix coupling_term;  // J Z(x)Z
    ComplexMatrix fields;         // g1 Z(x)I + g2 I(x)Z + h1 X(x)I + h2 I(x)X
    ComplexMatrix transverse;     // h1 X(x)I + h2 I(x)X
    ComplexMatrix mixed;          // h1 Y(x)Z + h2 Z(x)Y
    double j;
};

BondOperators make_bond(double j, double g1, double g2, double h1, double h2) {
    const ComplexMatrix x = pauli_matrix(Pauli::X);
    const ComplexMatrix y = pauli_matrix(Pauli::Y);
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    BondOperators ops;
    ops.j = j;
    ops.coupling_term = j * kron(z, z);
    ops.transverse = h1 * kron(x, id) + h2 * kron(id, x);
    ops.fields = g1 * kron(z, id) + g2 * kron(id, z) + ops.transverse;
    ops.mixed = h1 * kron(y, z) + h2 * kron(z, y);
    return ops;
}

}  // namespace

TEST_CASE("commutator of commuting operators vanishes") {
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    CHECK(max_abs(commutator(z, z)) == 0.0);
}

TEST_CASE("commutator reproduces the Pauli algebra") {
    const ComplexMatrix x = pauli_matrix(Pauli::X);
    const ComplexMatrix y = pauli_matrix(Pauli::Y);
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    CHECK(max_abs(commutator(z, x) - Complex(0, 2) * y) <= 1e-15);
    CHECK(max_abs(commutator(x, y) - Complex(0, 2) * z) <= 1e-15);
}

TEST_CASE("commutator is linear in both slots") {
    std::mt19937 rng(510);
    const ComplexMatrix a = random_matrix(rng, 4);
    const ComplexMatrix b = random_matrix(rng, 4);
    const ComplexMatrix c = random_matrix(rng, 4);
    const Complex mu(0.7, -0.3);
    CHECK(max_abs(commutator(a + mu * b, c) -
                  (commutator(a, c) + mu * commutator(b, c))) < 1e-13);
    CHECK(max_abs(commutator(c, a + mu * b) -
                  (commutator(c, a) + mu * commutator(c, b))) < 1e-13);
}

TEST_CASE("commutator rejects mismatched operands") {
    CHECK_THROWS_AS(
        commutator(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(4, 4)),
        DimensionMismatch);
}

TEST_CASE("single-bond commutator identities") {
    std::mt19937 rng(511);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const BondOperators ops = make_bond(dist(rng), dist(rng), dist(rng),
                                            dist(rng), dist(rng));
        const Complex two_i_j(0.0, 2.0 * ops.j);

        // One application: only the transverse part survives and rotates into
        // the mixed YZ + ZY combination.
        CHECK(max_abs(commutator(ops.coupling_term, ops.fields) -
                      two_i_j * ops.mixed) < 1e-12);

        // Two applications return to the transverse combination, scaled.
        CHECK(max_abs(nested_commutator(ops.coupling_term, ops.fields, 2) -
                      4.0 * ops.j * ops.j * ops.transverse) < 1e-12);

        // Three applications reproduce the first, scaled by 4 J^2.
        CHECK(max_abs(nested_commutator(ops.coupling_term, ops.fields, 3) -
                      4.0 * ops.j * ops.j * two_i_j * ops.mixed) < 1e-12);
    }
}

TEST_CASE("nested_commutator at order zero returns the operand") {
    std::mt19937 rng(512);
    const ComplexMatrix a = random_matrix(rng, 3);
    const ComplexMatrix b = random_matrix(rng, 3);
    CHECK(max_abs(nested_commutator(a, b, 0) - b) == 0.0);
}

TEST_CASE("nested_commutator rejects out-of-range orders") {
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    CHECK_THROWS_AS(nested_commutator(z, z, -1), ValidationError);
    CHECK_THROWS_AS(nested_commutator(z, z, 9), ValidationError);
}

TEST_CASE("conjugation expands into the iterated commutator series") {
    // e^{A} B e^{-A} = sum_k delta_A^k(B) / k! with A = x * H for Hermitian H,
    // truncated at k = 12; the guard on nested_commutator does not apply when
    // iterating the first-order bracket directly.
    std::mt19937 rng(513);
    ComplexMatrix h = random_hermitian(rng, 4);
    h /= max_abs(h) * 4.0;  // spectral norm at most about 1
    const double x = 0.5;   // keeps the truncation tail below the tolerance
    const ComplexMatrix b = random_matrix(rng, 4);

    const ComplexMatrix forward = expm_hermitian(h, -x, -1);   // e^{+ i x H}
    const ComplexMatrix backward = expm_hermitian(h, -x, +1);  // e^{- i x H}
    const ComplexMatrix a = Complex(0, x) * h;                 // log of forward

    ComplexMatrix series = ComplexMatrix::Zero(4, 4);
    ComplexMatrix term = b;
    double factorial = 1.0;
    for (int k = 0; k <= 12; ++k) {
        if (k > 0) {
            term = commutator(a, term);
            factorial *= k;
        }
        series += term / factorial;
    }
    CHECK(max_abs(forward * b * backward - series) < 1e-8);
}
