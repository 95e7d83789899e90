#include "isingpf/model.hpp"

#include <string>

namespace isingpf {

namespace {

constexpr int kMaxSites = 12;  // 2^12 == kDimensionCap

// Z eigenvalue (+1/-1) of `site` in basis state b.  Site 1 is the most
// significant bit.
inline double z_value(Eigen::Index b, int site, int n_sites) {
    return ((b >> (n_sites - site)) & 1) ? -1.0 : 1.0;
}

inline int wrap_site(int site, int n_sites) {
    return (site - 1) % n_sites + 1;
}

void require_buildable(const ChainSpec& spec) {
    spec.validate();
    if (spec.n_sites > kMaxSites) {
        throw DimensionCapExceeded("chain of " + std::to_string(spec.n_sites) +
                                   " sites exceeds the " +
                                   std::to_string(kMaxSites) + "-site cap");
    }
}

// Sum of J_k Z(k) Z(k+1) over the given bond parity, as a diagonal profile.
RealVector bond_diagonal(const ChainSpec& spec, int first_bond) {
    const int n = spec.n_sites;
    const Eigen::Index dim = spec.dim();
    RealVector d = RealVector::Zero(dim);
    for (int bond = first_bond; bond <= n; bond += 2) {
        const double j = spec.coupling[bond - 1];
        if (j == 0.0) continue;
        const int s1 = bond;
        const int s2 = wrap_site(bond + 1, n);
        for (Eigen::Index b = 0; b < dim; ++b) {
            d[b] += j * z_value(b, s1, n) * z_value(b, s2, n);
        }
    }
    return d;
}

}  // namespace

ComplexMatrix pauli_matrix(Pauli p) {
    ComplexMatrix m(2, 2);
    switch (p) {
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

ChainSpec ChainSpec::uniform(int n_sites, double coupling, double field_z,
                             double field_x) {
    ChainSpec spec;
    spec.n_sites = n_sites;
    spec.coupling = RealVector::Constant(n_sites, coupling);
    spec.field_z = RealVector::Constant(n_sites, field_z);
    spec.field_x = RealVector::Constant(n_sites, field_x);
    return spec;
}

void ChainSpec::validate() const {
    if (n_sites < 2) {
        throw ValidationError("chain needs at least 2 sites, got " +
                              std::to_string(n_sites));
    }
    if (n_sites % 2 != 0) {
        throw ValidationError("chain length must be even, got " +
                              std::to_string(n_sites));
    }
    const auto check_len = [&](const RealVector& v, const char* name) {
        if (v.size() != n_sites) {
            throw ValidationError(std::string(name) + " has length " +
                                  std::to_string(v.size()) + ", expected " +
                                  std::to_string(n_sites));
        }
    };
    check_len(coupling, "coupling");
    check_len(field_z, "field_z");
    check_len(field_x, "field_x");
}

ComplexMatrix site_operator(int n_sites, int site, Pauli p) {
    if (n_sites < 1) {
        throw ValidationError("site_operator: n_sites must be positive, got " +
                              std::to_string(n_sites));
    }
    if (n_sites > kMaxSites) {
        throw DimensionCapExceeded("site_operator: " + std::to_string(n_sites) +
                                   " sites exceeds the " +
                                   std::to_string(kMaxSites) + "-site cap");
    }
    if (site < 1 || site > n_sites) {
        throw SiteOutOfRange("site_operator: site " + std::to_string(site) +
                             " outside [1, " + std::to_string(n_sites) + "]");
    }
    const Eigen::Index left = Eigen::Index(1) << (site - 1);
    const Eigen::Index right = Eigen::Index(1) << (n_sites - site);
    ComplexMatrix out = kron(ComplexMatrix::Identity(left, left), pauli_matrix(p));
    return kron(out, ComplexMatrix::Identity(right, right));
}

RealVector zz_odd_diagonal(const ChainSpec& spec) {
    require_buildable(spec);
    return bond_diagonal(spec, 1);
}

RealVector zz_even_diagonal(const ChainSpec& spec) {
    require_buildable(spec);
    return bond_diagonal(spec, 2);
}

RealVector field_z_diagonal(const ChainSpec& spec) {
    require_buildable(spec);
    const int n = spec.n_sites;
    const Eigen::Index dim = spec.dim();
    RealVector d = RealVector::Zero(dim);
    for (int site = 1; site <= n; ++site) {
        const double g = spec.field_z[site - 1];
        if (g == 0.0) continue;
        for (Eigen::Index b = 0; b < dim; ++b) {
            d[b] += g * z_value(b, site, n);
        }
    }
    return d;
}

HamiltonianTerms build_terms(const ChainSpec& spec) {
    require_buildable(spec);
    const int n = spec.n_sites;
    const Eigen::Index dim = spec.dim();

    HamiltonianTerms terms;
    terms.spec = spec;

    terms.zz_odd = ComplexMatrix::Zero(dim, dim);
    terms.zz_odd.diagonal() = zz_odd_diagonal(spec).cast<Complex>();
    terms.zz_even = ComplexMatrix::Zero(dim, dim);
    terms.zz_even.diagonal() = zz_even_diagonal(spec).cast<Complex>();
    terms.field_z = ComplexMatrix::Zero(dim, dim);
    terms.field_z.diagonal() = field_z_diagonal(spec).cast<Complex>();

    // X on one site flips that site's bit, so the transverse block connects
    // each basis state to its single-bit neighbours.
    terms.field_x = ComplexMatrix::Zero(dim, dim);
    for (int site = 1; site <= n; ++site) {
        const double h = spec.field_x[site - 1];
        if (h == 0.0) continue;
        const Eigen::Index mask = Eigen::Index(1) << (n - site);
        for (Eigen::Index b = 0; b < dim; ++b) {
            terms.field_x(b ^ mask, b) += h;
        }
    }

    terms.total = terms.zz_odd + terms.zz_even + terms.field_z + terms.field_x;
    return terms;
}

}  // namespace isingpf
