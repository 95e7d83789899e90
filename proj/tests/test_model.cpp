#include "doctest.h"

#include <random>

#include "isingpf/model.hpp"
#include "helpers.hpp"

using namespace isingpf;

namespace {

// Independent reconstruction through explicit embedded operators; the
// production code builds the diagonals by bit arithmetic instead.
ComplexMatrix oracle_total(const ChainSpec& spec) {
    const int n = spec.n_sites;
    ComplexMatrix h = ComplexMatrix::Zero(spec.dim(), spec.dim());
    for (int bond = 1; bond <= n; ++bond) {
        const int next = bond % n + 1;
        h += spec.coupling[bond - 1] * site_operator(n, bond, Pauli::Z) *
             site_operator(n, next, Pauli::Z);
    }
    for (int site = 1; site <= n; ++site) {
        h += spec.field_z[site - 1] * site_operator(n, site, Pauli::Z);
        h += spec.field_x[site - 1] * site_operator(n, site, Pauli::X);
    }
    return h;
}

ChainSpec random_spec(std::mt19937& rng, int n_sites, double lo, double hi) {
    ChainSpec spec;
    spec.n_sites = n_sites;
    spec.coupling = testutil::random_vector(rng, n_sites, lo, hi);
    spec.field_z = testutil::random_vector(rng, n_sites, lo, hi);
    spec.field_x = testutil::random_vector(rng, n_sites, lo, hi);
    return spec;
}

}  // namespace

TEST_CASE("site_operator embeds the expected factors") {
    CHECK(max_abs(site_operator(1, 1, Pauli::Z) - pauli_matrix(Pauli::Z)) == 0.0);
    CHECK(max_abs(site_operator(2, 2, Pauli::X) -
                  kron(ComplexMatrix::Identity(2, 2), pauli_matrix(Pauli::X))) ==
          0.0);
    // Site 1 is the most significant bit: Z on site 1 of two sites is
    // diag(1, 1, -1, -1).
    const ComplexMatrix z1 = site_operator(2, 1, Pauli::Z);
    CHECK(z1(0, 0) == Complex(1, 0));
    CHECK(z1(1, 1) == Complex(1, 0));
    CHECK(z1(2, 2) == Complex(-1, 0));
    CHECK(z1(3, 3) == Complex(-1, 0));
}

TEST_CASE("site_operator squares to the identity") {
    const ComplexMatrix y2 = site_operator(3, 2, Pauli::Y);
    CHECK(max_abs(y2 * y2 - ComplexMatrix::Identity(8, 8)) <= 1e-15);
}

TEST_CASE("site_operator validates its arguments") {
    CHECK_THROWS_AS(site_operator(3, 0, Pauli::X), SiteOutOfRange);
    CHECK_THROWS_AS(site_operator(3, 4, Pauli::X), SiteOutOfRange);
    CHECK_THROWS_AS(site_operator(13, 1, Pauli::X), DimensionCapExceeded);
}

TEST_CASE("two-site ring doubles its single bond") {
    // Both bonds of the 2-ring couple the same pair, so the coupling block is
    // (J1 + J2) Z(x)Z; this double counting is part of the ring convention.
    ChainSpec spec = ChainSpec::uniform(2, 1.0, 0.0, 0.0);
    const HamiltonianTerms terms = build_terms(spec);
    const ComplexMatrix zz =
        kron(pauli_matrix(Pauli::Z), pauli_matrix(Pauli::Z));
    CHECK(max_abs(terms.total - 2.0 * zz) <= 1e-15);
}

TEST_CASE("bond diagonals follow the Z sign pattern") {
    ChainSpec spec = ChainSpec::uniform(2, 0.0, 0.0, 0.0);
    spec.coupling[0] = 1.0;  // only the odd bond
    const RealVector d = zz_odd_diagonal(spec);
    CHECK(d[0] == 1.0);
    CHECK(d[1] == -1.0);
    CHECK(d[2] == -1.0);
    CHECK(d[3] == 1.0);
    CHECK(zz_even_diagonal(spec).isZero(0.0));
}

TEST_CASE("build_terms matches the explicit operator-sum construction") {
    std::mt19937 rng(404);
    const ChainSpec spec = random_spec(rng, 6, -1.0, 1.5);
    const HamiltonianTerms terms = build_terms(spec);

    CHECK(max_abs(terms.total - oracle_total(spec)) < 1e-13);
    CHECK(max_abs(terms.zz_odd + terms.zz_even + terms.field_z + terms.field_x -
                  terms.total) < 1e-13);

    // Block-level oracle: odd bonds only.
    ComplexMatrix odd = ComplexMatrix::Zero(spec.dim(), spec.dim());
    for (int bond = 1; bond <= 6; bond += 2) {
        odd += spec.coupling[bond - 1] * site_operator(6, bond, Pauli::Z) *
               site_operator(6, bond % 6 + 1, Pauli::Z);
    }
    CHECK(max_abs(terms.zz_odd - odd) < 1e-13);

    CHECK(is_hermitian(terms.total));
    CHECK(std::abs(terms.total.trace()) < 1e-12);
}

TEST_CASE("diagonal blocks are diagonal and the transverse block is not") {
    std::mt19937 rng(405);
    const ChainSpec spec = random_spec(rng, 4, 0.1, 1.2);
    const HamiltonianTerms terms = build_terms(spec);

    const auto off_diagonal_part = [](const ComplexMatrix& m) {
        ComplexMatrix copy = m;
        copy.diagonal().setZero();
        return max_abs(copy);
    };
    CHECK(off_diagonal_part(terms.zz_odd) == 0.0);
    CHECK(off_diagonal_part(terms.zz_even) == 0.0);
    CHECK(off_diagonal_part(terms.field_z) == 0.0);
    CHECK(max_abs(ComplexMatrix(terms.field_x.diagonal().asDiagonal())) == 0.0);

    // Diagonal blocks commute exactly.
    const auto comm = [](const ComplexMatrix& a, const ComplexMatrix& b) {
        return max_abs(a * b - b * a);
    };
    CHECK(comm(terms.zz_odd, terms.zz_even) <= 1e-13);
    CHECK(comm(terms.zz_odd, terms.field_z) <= 1e-13);
    CHECK(comm(terms.zz_even, terms.field_z) <= 1e-13);
}

TEST_CASE("zero transverse field leaves the evolution diagonal") {
    ChainSpec spec = ChainSpec::uniform(4, 1.0, 0.7, 0.0);
    const HamiltonianTerms terms = build_terms(spec);
    const RealVector diagonal =
        zz_odd_diagonal(spec) + zz_even_diagonal(spec) + field_z_diagonal(spec);
    for (double t : {0.3, 1.0, 1.9}) {
        CHECK(max_abs(expm_hermitian(terms.total, t, -1) -
                      diag_expm(diagonal, t)) < 1e-12);
    }
}

TEST_CASE("uniform chains are translation covariant") {
    const ChainSpec spec = ChainSpec::uniform(6, 0.8, 0.4, 0.25);
    const HamiltonianTerms terms = build_terms(spec);

    // Permutation that rotates site contents by one position.
    const int n = 6;
    const Eigen::Index dim = spec.dim();
    ComplexMatrix shift = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const Eigen::Index rotated =
            ((b >> 1) | ((b & 1) << (n - 1))) & (dim - 1);
        shift(rotated, b) = 1.0;
    }
    CHECK(max_abs(shift * terms.total * shift.adjoint() - terms.total) < 1e-12);
}

TEST_CASE("chain validation rejects malformed specs") {
    CHECK_THROWS_AS(build_terms(ChainSpec::uniform(5, 1.0, 0.2, 0.3)),
                    ValidationError);
    CHECK_THROWS_AS(build_terms(ChainSpec::uniform(0, 1.0, 0.2, 0.3)),
                    ValidationError);
    CHECK_THROWS_AS(build_terms(ChainSpec::uniform(14, 1.0, 0.2, 0.3)),
                    DimensionCapExceeded);

    ChainSpec bad = ChainSpec::uniform(4, 1.0, 0.2, 0.3);
    bad.field_x = RealVector::Zero(3);
    CHECK_THROWS_AS(build_terms(bad), ValidationError);
}
