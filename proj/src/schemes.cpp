#include "isingpf/schemes.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace isingpf {

namespace {

constexpr double kPi = std::numbers::pi;

// 1-based bond touching `site` on the left, wrapping around the ring.
int left_bond(int site, int n_sites) {
    return site == 1 ? n_sites : site - 1;
}

// 1-based bond touching `site` on the right.
int right_bond(int site, int /*n_sites*/) {
    return site;
}

// The bond pairing `site` within the odd-bond block: odd sites pair with the
// bond to their right, even sites with the bond to their left.
int odd_block_bond(int site) {
    return (site % 2 == 1) ? site : site - 1;
}

double guarded_scaling(double base, double t, const char* kind, int index) {
    const double arg = base * t;
    if (std::abs(arg) >= kScalingLimitBand && !pole_admissible(arg)) {
        throw NearPole(arg, std::string("coefficient cascade: ") + kind + "[" +
                                std::to_string(index) + "] * t");
    }
    return scaling_function(arg);
}

// exp(-i theta X) on one site.
ComplexMatrix x_rotation(double theta) {
    const double c = std::cos(theta);
    const Complex ms(0.0, -std::sin(theta));
    ComplexMatrix m(2, 2);
    m << Complex(c, 0.0), ms, ms, Complex(c, 0.0);
    return m;
}

// In-place right-multiplication by the diagonal unitary diag(exp(-i tau d)).
void scale_columns(ComplexMatrix& w, const RealVector& diagonal, double tau) {
    if (tau == 0.0) return;
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
        const double angle = -tau * diagonal[k];
        w.col(k) *= Complex(std::cos(angle), std::sin(angle));
    }
}

// In-place right-multiplication by the tensor product over sites of
// exp(-i theta_k X).  Each site mixes the column pairs whose basis indices
// differ in that site's bit; right-multiplication keeps the updates on
// contiguous columns.
void mix_column_pairs(ComplexMatrix& w, const RealVector& thetas, int n_sites) {
    const Eigen::Index dim = w.cols();
    ComplexVector tmp(w.rows());
    for (int site = 1; site <= n_sites; ++site) {
        const double theta = thetas[site - 1];
        if (theta == 0.0) continue;
        const double c = std::cos(theta);
        const Complex ms(0.0, -std::sin(theta));
        const Eigen::Index mask = Eigen::Index(1) << (n_sites - site);
        for (Eigen::Index b = 0; b < dim; ++b) {
            if (b & mask) continue;
            const Eigen::Index b1 = b | mask;
            tmp = c * w.col(b) + ms * w.col(b1);
            w.col(b1) = ms * w.col(b) + c * w.col(b1);
            w.col(b) = tmp;
        }
    }
}

void require_terms_consistent(const HamiltonianTerms& terms) {
    terms.spec.validate();
    if (terms.total.rows() != terms.spec.dim() ||
        terms.total.cols() != terms.spec.dim()) {
        throw DimensionMismatch(
            "chain terms are " + std::to_string(terms.total.rows()) + "x" +
            std::to_string(terms.total.cols()) + " but the spec implies " +
            std::to_string(terms.spec.dim()));
    }
}

}  // namespace

const char* scheme_name(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Exact:
            return "exact";
        case SchemeId::Trotter2:
            return "trotter2";
        case SchemeId::NestedUnit:
            return "nested_unit";
        case SchemeId::NestedPerturbative:
            return "nested_perturbative";
    }
    return "unknown";
}

bool pole_admissible(double x) {
    const double ax = std::abs(x);
    const double m = std::round(ax / kPi - 0.5);
    const double pole = (m + 0.5) * kPi;
    return std::abs(ax - pole) > kPoleGuard;
}

void require_pole_admissible(double x, const char* context) {
    if (!pole_admissible(x)) {
        throw NearPole(x, context);
    }
}

double scaling_function(double x) {
    if (std::abs(x) < kScalingLimitBand) {
        return 1.0;
    }
    if (!pole_admissible(x)) {
        throw NearPole(x, "scaling_function");
    }
    return std::tan(x) / x;
}

double optimal_lambda(double t) {
    return 1.0 / scaling_function(t);
}

// ---------------------------------------------------------------------------
// Single-site schemes.
// ---------------------------------------------------------------------------

namespace {

ComplexMatrix z_phase(double t) {
    RealVector d(2);
    d << 1.0, -1.0;
    return diag_expm(d, t);
}

}  // namespace

ComplexMatrix single_qubit_exact(double alpha, double t) {
    ComplexMatrix h(2, 2);
    h << Complex(1.0, 0.0), Complex(alpha, 0.0), Complex(alpha, 0.0),
        Complex(-1.0, 0.0);
    return expm_hermitian(h, t, -1);
}

ComplexMatrix single_qubit_trotter2(double alpha, double t) {
    const ComplexMatrix wing = x_rotation(0.5 * t * alpha);
    return wing * z_phase(t) * wing;
}

ComplexMatrix single_qubit_perturbative(double alpha, double t) {
    if (std::abs(t) >= kScalingLimitBand && !pole_admissible(t)) {
        throw NearPole(t, "single_qubit_perturbative: t");
    }
    const double f = scaling_function(t);
    const ComplexMatrix wing = x_rotation(0.5 * t * alpha * f);
    return wing * z_phase(t) * wing;
}

// ---------------------------------------------------------------------------
// Single-bond schemes.
// ---------------------------------------------------------------------------

namespace {

// g1 Z(x)I + g2 I(x)Z + h1 X(x)I + h2 I(x)X, possibly with the transverse
// pair rescaled.
ComplexMatrix bond_fields(double g1, double g2, double h1, double h2,
                          double transverse_scale) {
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    const ComplexMatrix x = pauli_matrix(Pauli::X);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    return g1 * kron(z, id) + g2 * kron(id, z) +
           transverse_scale * (h1 * kron(x, id) + h2 * kron(id, x));
}

RealVector bond_zz_diagonal(double coupling) {
    RealVector d(4);
    d << coupling, -coupling, -coupling, coupling;
    return d;
}

ComplexMatrix two_qubit_split(double coupling, double g1, double g2, double h1,
                              double h2, double alpha, double t,
                              double transverse_scale) {
    const ComplexMatrix wing = expm_hermitian(
        alpha * bond_fields(g1, g2, h1, h2, transverse_scale), 0.5 * t, -1);
    return wing * diag_expm(bond_zz_diagonal(coupling), t) * wing;
}

}  // namespace

ComplexMatrix two_qubit_exact(double coupling, double g1, double g2, double h1,
                              double h2, double alpha, double t) {
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    const ComplexMatrix h =
        coupling * kron(z, z) + alpha * bond_fields(g1, g2, h1, h2, 1.0);
    return expm_hermitian(h, t, -1);
}

ComplexMatrix two_qubit_trotter2(double coupling, double g1, double g2,
                                 double h1, double h2, double alpha, double t) {
    return two_qubit_split(coupling, g1, g2, h1, h2, alpha, t, 1.0);
}

ComplexMatrix two_qubit_perturbative(double coupling, double g1, double g2,
                                     double h1, double h2, double alpha,
                                     double t) {
    const double arg = coupling * t;
    if (std::abs(arg) >= kScalingLimitBand && !pole_admissible(arg)) {
        throw NearPole(arg, "two_qubit_perturbative: coupling * t");
    }
    const double f = scaling_function(arg);
    return two_qubit_split(coupling, g1, g2, h1, h2, alpha, t, f);
}

// ---------------------------------------------------------------------------
// Chain coefficient cascade.
// ---------------------------------------------------------------------------

RealVector cascade_stage1(const ChainSpec& spec, double t) {
    spec.validate();
    const int n = spec.n_sites;
    RealVector c(n);
    for (int site = 1; site <= n; ++site) {
        const int bond = odd_block_bond(site);
        c[site - 1] = guarded_scaling(spec.coupling[bond - 1], t, "coupling", bond);
    }
    return c;
}

RealVector cascade_stage2(const ChainSpec& spec, double t) {
    const int n = spec.n_sites;
    RealVector c = cascade_stage1(spec, t);
    for (int site = 1; site <= n; ++site) {
        const int other = (site % 2 == 1) ? left_bond(site, n) : right_bond(site, n);
        c[site - 1] *= guarded_scaling(spec.coupling[other - 1], t, "coupling", other);
    }
    return c;
}

RealVector cascade_stage3(const ChainSpec& spec, double t) {
    const int n = spec.n_sites;
    RealVector c = cascade_stage2(spec, t);
    for (int site = 1; site <= n; ++site) {
        c[site - 1] *= guarded_scaling(spec.field_z[site - 1], t, "field_z", site);
    }
    return c;
}

CoefficientSet build_coefficients(const ChainSpec& spec, double t,
                                  CoefficientVariant variant) {
    spec.validate();
    CoefficientSet out;
    out.variant = variant;
    if (variant == CoefficientVariant::Unit) {
        out.values = RealVector::Ones(spec.n_sites);
    } else {
        out.values = cascade_stage3(spec, t);
    }
    return out;
}

std::vector<double> coefficient_arguments(const ChainSpec& spec, double t) {
    spec.validate();
    const int n = spec.n_sites;
    std::vector<double> args;
    args.reserve(3 * n);
    for (int site = 1; site <= n; ++site) {
        args.push_back(spec.field_z[site - 1] * t);
        args.push_back(spec.coupling[left_bond(site, n) - 1] * t);
        args.push_back(spec.coupling[right_bond(site, n) - 1] * t);
    }
    return args;
}

bool chain_admissible(const ChainSpec& spec, double t) {
    for (double arg : coefficient_arguments(spec, t)) {
        if (std::abs(arg) >= kScalingLimitBand && !pole_admissible(arg)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Chain evolution schemes.
// ---------------------------------------------------------------------------

ComplexMatrix trotter2_chain(const HamiltonianTerms& terms, double t) {
    require_terms_consistent(terms);
    const ChainSpec& spec = terms.spec;

    RealVector theta(spec.n_sites);
    for (int k = 0; k < spec.n_sites; ++k) {
        theta[k] = 0.5 * t * spec.field_x[k];
    }
    const RealVector diagonal =
        zz_odd_diagonal(spec) + zz_even_diagonal(spec) + field_z_diagonal(spec);

    // Right-multiplying the working matrix by each factor in reading order
    // assembles the product left factor first.
    ComplexMatrix w = ComplexMatrix::Identity(spec.dim(), spec.dim());
    mix_column_pairs(w, theta, spec.n_sites);
    scale_columns(w, diagonal, t);
    mix_column_pairs(w, theta, spec.n_sites);
    return w;
}

ComplexMatrix nested_product(const HamiltonianTerms& terms,
                             const CoefficientSet& coefficients, double t) {
    require_terms_consistent(terms);
    const ChainSpec& spec = terms.spec;
    const int n = spec.n_sites;

    if (coefficients.values.size() != n) {
        throw DimensionMismatch("nested_product: " +
                                std::to_string(coefficients.values.size()) +
                                " coefficients for " + std::to_string(n) +
                                " sites");
    }
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(coefficients.values[k])) {
            throw ValidationError("nested_product: coefficient for site " +
                                  std::to_string(k + 1) + " is not finite");
        }
    }

    RealVector theta(n);
    for (int k = 0; k < n; ++k) {
        theta[k] = (t / 8.0) * coefficients.values[k] * spec.field_x[k];
    }
    const RealVector d_odd = zz_odd_diagonal(spec);
    const RealVector d_even = zz_even_diagonal(spec);
    const RealVector d_z = field_z_diagonal(spec);

    ComplexMatrix w = ComplexMatrix::Identity(spec.dim(), spec.dim());
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_z, t / 4.0);
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_even, t / 2.0);
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_z, t / 4.0);
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_odd, t);
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_z, t / 4.0);
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_even, t / 2.0);
    mix_column_pairs(w, theta, n);
    scale_columns(w, d_z, t / 4.0);
    mix_column_pairs(w, theta, n);
    return w;
}

ExactEvolver::ExactEvolver(const ComplexMatrix& hamiltonian)
    : eig_(hermitian_eig(hamiltonian)),
      adjoint_(eig_.eigenvectors.adjoint()) {}

ComplexMatrix ExactEvolver::operator()(double t) const {
    const Eigen::Index dim = adjoint_.rows();
    if (t == 0.0) {
        return ComplexMatrix::Identity(dim, dim);
    }
    ComplexVector phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double angle = -t * eig_.eigenvalues[k];
        phases[k] = Complex(std::cos(angle), std::sin(angle));
    }
    return eig_.eigenvectors * (phases.asDiagonal() * adjoint_);
}

ComplexMatrix scheme_unitary(const HamiltonianTerms& terms, SchemeId scheme,
                             double t, const ExactEvolver* exact) {
    switch (scheme) {
        case SchemeId::Exact:
            if (exact != nullptr) {
                return (*exact)(t);
            }
            return ExactEvolver(terms.total)(t);
        case SchemeId::Trotter2:
            return trotter2_chain(terms, t);
        case SchemeId::NestedUnit:
            return nested_product(
                terms, build_coefficients(terms.spec, t, CoefficientVariant::Unit),
                t);
        case SchemeId::NestedPerturbative:
            return nested_product(
                terms,
                build_coefficients(terms.spec, t, CoefficientVariant::Perturbative),
                t);
    }
    throw UnsupportedScheme("scheme_unitary: unknown scheme id");
}

ComplexMatrix scheme_unitary_repeated(const HamiltonianTerms& terms,
                                      SchemeId scheme, double t, int repetitions,
                                      const ExactEvolver* exact) {
    if (repetitions < 1) {
        throw ValidationError("scheme_unitary_repeated: repetitions must be >= 1, got " +
                              std::to_string(repetitions));
    }
    const double step = t / repetitions;
    const ComplexMatrix u = scheme_unitary(terms, scheme, step, exact);
    ComplexMatrix out = u;
    for (int k = 1; k < repetitions; ++k) {
        out = u * out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cost accounting.
// ---------------------------------------------------------------------------

UnitaryCount local_unitary_count(SchemeId scheme, const ChainSpec& spec) {
    spec.validate();
    const long long n = spec.n_sites;

    // Per application, the plain splitting spends two transverse half-steps
    // (n single-site rotations each) plus the diagonal step, which factors
    // into n/2 + n/2 two-site phase gates and n single-site phases: 4n total.
    const long long trotter = 4 * n;

    long long count = 0;
    switch (scheme) {
        case SchemeId::Exact:
            throw UnsupportedScheme(
                "local_unitary_count: exact evolution has no local-factor "
                "decomposition");
        case SchemeId::Trotter2:
            count = trotter;
            break;
        case SchemeId::NestedUnit:
        case SchemeId::NestedPerturbative:
            // Eight transverse eighth-steps (n single-site rotations each),
            // four longitudinal quarter-steps (n single-site phases each),
            // one odd-bond step (n/2 two-site gates) and two even-bond
            // half-steps (n/2 each): 8n + 4n + 3n/2.
            count = 8 * n + 4 * n + (3 * n) / 2;
            break;
    }

    const long long divisor = std::gcd(count, trotter);
    return UnitaryCount{count, count / divisor, trotter / divisor};
}

}  // namespace isingpf
