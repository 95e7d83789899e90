#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isingpf/schemes.hpp"

namespace isingpf {

// Unitarity tolerance for fidelity preconditions.  Looser than kUnitaryTol
// because the compared operators are themselves products of many factors.
inline constexpr double kFidelityUnitaryTol = 1e-9;

inline constexpr double kDefaultBaseline = 0.9999;

// Fidelity gaps below this magnitude are indistinguishable from rounding
// noise in the trace fidelity and carry no usable sign.
inline constexpr double kGapNoiseFloor = 1e-13;

// |Tr(u v^dagger)|^2 / dim^2: 1 exactly when u and v agree up to a global
// phase.  Both arguments must be unitary within kFidelityUnitaryTol.
double fidelity(const ComplexMatrix& u, const ComplexMatrix& v);

// Snapshot of the chain parameters a result was computed from.
struct SpecDigest {
    int n_sites = 0;
    RealVector coupling;
    RealVector field_z;
    RealVector field_x;
};

SpecDigest make_digest(const ChainSpec& spec);

struct FidelityCurve {
    SchemeId scheme = SchemeId::Exact;
    std::vector<double> t_grid;
    std::vector<double> values;  // fidelity against exact, per grid point
    SpecDigest digest;
};

// Fidelity of the scheme against exact evolution at every grid point.  The
// grid must be strictly ascending.  For the perturbative scheme every point
// is checked for pole admissibility up front; a single NearPole listing all
// offending points is thrown rather than silently truncating the curve.
FidelityCurve fidelity_curve(const ChainSpec& spec, SchemeId scheme,
                             const std::vector<double>& t_grid);

struct AdvantageWindow {
    // Maximal intervals where the perturbative scheme's fidelity exceeds the
    // plain splitting's by more than kGapNoiseFloor, endpoints refined by
    // bisection.
    std::vector<std::pair<double, double>> intervals;
    double grid_spacing = 0.0;
    double resolution = 0.0;  // grid_spacing / 16
    SpecDigest digest;
};

AdvantageWindow advantage_window(const ChainSpec& spec,
                                 const std::vector<double>& t_grid);

struct ImprovementMetrics {
    // Largest pointwise fidelity gap (perturbative minus plain) on the grid.
    double max_improvement = 0.0;
    // First time the plain splitting's fidelity falls through the baseline,
    // located by linear interpolation between grid points.
    double baseline_time = 0.0;
    // Perturbative fidelity evaluated at baseline_time.
    double fidelity_at_baseline = 0.0;
    // 1 - (1 - F_pert) / (1 - F_plain) at baseline_time.
    double error_reduction = 0.0;
};

// Throws BaselineNotCrossed when the plain splitting never falls through the
// baseline on the grid (or is already below it at the first point).
ImprovementMetrics improvement_metrics(const ChainSpec& spec,
                                       const std::vector<double>& t_grid,
                                       double baseline = kDefaultBaseline);

enum class SweepAxis { FieldZ, FieldX };

const char* sweep_axis_name(SweepAxis axis);

struct SweepResult {
    struct Row {
        double axis_value = 0.0;
        bool ok = false;
        ImprovementMetrics metrics;
        std::string error;  // diagnostic for failed points, empty otherwise
    };
    SweepAxis axis = SweepAxis::FieldZ;
    double baseline = kDefaultBaseline;
    std::vector<Row> rows;  // ascending in axis_value
    SpecDigest base_digest;
};

// Repeats improvement_metrics with the chosen field set uniformly to each
// value.  Failures at individual points are recorded in their rows instead
// of aborting the sweep.
SweepResult parameter_sweep(const ChainSpec& base, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<double>& t_grid,
                            double baseline = kDefaultBaseline);

// Uniform grid of `steps` points over the half-open interval (t_min, t_max].
std::vector<double> make_grid(double t_min, double t_max, int steps);

}  // namespace isingpf
