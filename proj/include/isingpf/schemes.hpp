#pragma once

#include <vector>

#include "isingpf/model.hpp"

namespace isingpf {

enum class SchemeId { Exact, Trotter2, NestedUnit, NestedPerturbative };

const char* scheme_name(SchemeId scheme);

enum class CoefficientVariant { Unit, Perturbative };

// Per-site multipliers applied to the transverse strengths inside the X-type
// factors of the nested product.
struct CoefficientSet {
    CoefficientVariant variant = CoefficientVariant::Unit;
    RealVector values;  // length n_sites
};

// Half-width of the guard band around the poles of tan.  Arguments closer
// than this to an odd multiple of pi/2 are rejected with NearPole instead of
// being clamped.
inline constexpr double kPoleGuard = 1e-3;

// Below this magnitude tan(x)/x is evaluated as its limit, exactly 1.
inline constexpr double kScalingLimitBand = 1e-8;

bool pole_admissible(double x);
void require_pole_admissible(double x, const char* context);

// tan(x)/x with the removable singularity at 0 filled in.  Throws NearPole
// inside the guard band.
double scaling_function(double x);

// t / tan(t), the factor by which the symmetric splitting effectively scales
// a transverse term; the reciprocal of scaling_function.
double optimal_lambda(double t);

// ---------------------------------------------------------------------------
// Single-site schemes for H = alpha * X + Z.
// ---------------------------------------------------------------------------

ComplexMatrix single_qubit_exact(double alpha, double t);
ComplexMatrix single_qubit_trotter2(double alpha, double t);
// Symmetric splitting with the transverse strength rescaled by tan(t)/t.
ComplexMatrix single_qubit_perturbative(double alpha, double t);

// ---------------------------------------------------------------------------
// Single-bond schemes for H = J Z(x)Z + alpha * (g1 Z(x)I + g2 I(x)Z
//                                               + h1 X(x)I + h2 I(x)X).
// ---------------------------------------------------------------------------

ComplexMatrix two_qubit_exact(double coupling, double g1, double g2, double h1,
                              double h2, double alpha, double t);
ComplexMatrix two_qubit_trotter2(double coupling, double g1, double g2,
                                 double h1, double h2, double alpha, double t);
// As two_qubit_trotter2 but with the transverse pair rescaled by
// tan(J t)/(J t).  Throws NearPole when J t falls in the guard band.
ComplexMatrix two_qubit_perturbative(double coupling, double g1, double g2,
                                     double h1, double h2, double alpha,
                                     double t);

// ---------------------------------------------------------------------------
// Chain coefficient cascade.
// ---------------------------------------------------------------------------

// Stage 1: each site picks up tan(Jt)/(Jt) of the coupling on its bond within
// the odd-bond pairing.  Stage 2 folds in the remaining adjacent bond.
// Stage 3 additionally folds in the site's own longitudinal strength; these
// are the perturbative coefficients.
RealVector cascade_stage1(const ChainSpec& spec, double t);
RealVector cascade_stage2(const ChainSpec& spec, double t);
RealVector cascade_stage3(const ChainSpec& spec, double t);

CoefficientSet build_coefficients(const ChainSpec& spec, double t,
                                  CoefficientVariant variant);

// All tan arguments the perturbative cascade evaluates at time t.
std::vector<double> coefficient_arguments(const ChainSpec& spec, double t);
// True when every such argument clears the pole guard band.
bool chain_admissible(const ChainSpec& spec, double t);

// ---------------------------------------------------------------------------
// Chain evolution schemes.
// ---------------------------------------------------------------------------

// Plain second-order splitting: transverse half step, all diagonal blocks in
// one full step, transverse half step.
ComplexMatrix trotter2_chain(const HamiltonianTerms& terms, double t);

// The fifteen-factor nested splitting.  Reading left to right the factors
// are, with X denoting the coefficient-scaled transverse eighth-step:
//   X, Z(t/4), X, EvenZZ(t/2), X, Z(t/4), X, OddZZ(t), X, Z(t/4), X,
//   EvenZZ(t/2), X, Z(t/4), X
// All diagonal factors are applied as phase profiles and the X factors as
// per-site rotations, so assembly costs O(dim^2 * n_sites).
ComplexMatrix nested_product(const HamiltonianTerms& terms,
                             const CoefficientSet& coefficients, double t);

// Exact evolution with the eigendecomposition computed once and reused for
// every time requested.
class ExactEvolver {
public:
    explicit ExactEvolver(const ComplexMatrix& hamiltonian);

    // exp(-i t H)
    ComplexMatrix operator()(double t) const;

    const EigenSystem& system() const { return eig_; }

private:
    EigenSystem eig_;
    ComplexMatrix adjoint_;  // eigenvectors^dagger, cached
};

// One application of the requested scheme over the full interval t.  For
// SchemeId::Exact an existing evolver can be supplied to avoid repeating the
// eigendecomposition; if null, one is built on the spot.
ComplexMatrix scheme_unitary(const HamiltonianTerms& terms, SchemeId scheme,
                             double t, const ExactEvolver* exact = nullptr);

// `repetitions` applications of the scheme at step t/repetitions.
ComplexMatrix scheme_unitary_repeated(const HamiltonianTerms& terms,
                                      SchemeId scheme, double t,
                                      int repetitions,
                                      const ExactEvolver* exact = nullptr);

// ---------------------------------------------------------------------------
// Cost accounting.
// ---------------------------------------------------------------------------

struct UnitaryCount {
    long long count = 0;      // local (one- and two-site) unitaries per step
    long long ratio_num = 0;  // count relative to the plain second-order
    long long ratio_den = 0;  // splitting, as a reduced fraction
};

// Throws UnsupportedScheme for SchemeId::Exact, which has no decomposition
// into local factors.
UnitaryCount local_unitary_count(SchemeId scheme, const ChainSpec& spec);

}  // namespace isingpf
