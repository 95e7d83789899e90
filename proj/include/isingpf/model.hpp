#pragma once

#include "isingpf/linalg.hpp"

namespace isingpf {

enum class Pauli { X, Y, Z };

// The 2x2 Pauli matrix for the given axis.
ComplexMatrix pauli_matrix(Pauli p);

// Closed ring of an even number of spin-1/2 sites.  Sites and bonds are
// 1-based; bond k couples sites k and k+1, and bond n_sites wraps around to
// site 1.  Site 1 is the leftmost factor of the tensor product, i.e. the most
// significant bit of the basis index.
struct ChainSpec {
    int n_sites = 0;
    RealVector coupling;  // per bond, length n_sites
    RealVector field_z;   // longitudinal field per site
    RealVector field_x;   // transverse field per site

    static ChainSpec uniform(int n_sites, double coupling, double field_z,
                             double field_x);

    Eigen::Index dim() const { return Eigen::Index(1) << n_sites; }

    // Throws ValidationError unless n_sites is even, at least 2, and all
    // three parameter vectors have length n_sites.
    void validate() const;
};

// The chain Hamiltonian split into four blocks:
//   zz_odd  - couplings on odd-numbered bonds   (diagonal)
//   zz_even - couplings on even-numbered bonds  (diagonal, includes the wrap)
//   field_z - longitudinal field                (diagonal)
//   field_x - transverse field                  (zero diagonal)
// total is their sum.  The spec is kept alongside so downstream evolution
// routines can reach the raw per-site parameters.
struct HamiltonianTerms {
    ChainSpec spec;
    ComplexMatrix zz_odd;
    ComplexMatrix zz_even;
    ComplexMatrix field_z;
    ComplexMatrix field_x;
    ComplexMatrix total;
};

// I (x) ... (x) P (x) ... (x) I with P at 1-based position `site`.
// Throws SiteOutOfRange if site is outside [1, n_sites] and
// DimensionCapExceeded if 2^n_sites would exceed the dimension cap.
ComplexMatrix site_operator(int n_sites, int site, Pauli p);

HamiltonianTerms build_terms(const ChainSpec& spec);

// Real diagonals of the three diagonal blocks, indexed by basis state.
// These let evolution routines apply the blocks as phase profiles without
// materializing the full matrices.
RealVector zz_odd_diagonal(const ChainSpec& spec);
RealVector zz_even_diagonal(const ChainSpec& spec);
RealVector field_z_diagonal(const ChainSpec& spec);

}  // namespace isingpf
