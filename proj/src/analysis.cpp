#include "isingpf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "isingpf/parallel.hpp"

namespace isingpf {

namespace {

// Shared state for repeated evaluations against the same chain: the block
// decomposition and the exact eigendecomposition are built once.
struct ChainContext {
    HamiltonianTerms terms;
    ExactEvolver evolver;

    explicit ChainContext(const ChainSpec& spec)
        : terms(build_terms(spec)), evolver(terms.total) {}

    double fidelity_at(SchemeId scheme, double t) const {
        return fidelity(scheme_unitary(terms, scheme, t, &evolver), evolver(t));
    }

    double gap_at(double t) const {
        return fidelity_at(SchemeId::NestedPerturbative, t) -
               fidelity_at(SchemeId::Trotter2, t);
    }
};

void require_ascending(const std::vector<double>& grid, const char* context) {
    if (grid.empty()) {
        throw ValidationError(std::string(context) + ": time grid is empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ValidationError(std::string(context) +
                                  ": time grid must be strictly ascending");
        }
    }
}

// The perturbative coefficients evaluate tan at every (coupling, field) pair;
// reject the whole grid up front, listing each bad point, instead of failing
// half way through a curve.
void require_admissible_grid(const ChainSpec& spec,
                             const std::vector<double>& grid,
                             const char* context) {
    std::vector<double> bad;
    for (double t : grid) {
        if (!chain_admissible(spec, t)) bad.push_back(t);
    }
    if (bad.empty()) return;
    std::string msg = std::string(context) +
                      ": grid points inadmissible for the perturbative "
                      "coefficients: t =";
    char buf[40];
    for (double t : bad) {
        std::snprintf(buf, sizeof buf, " %.12g", t);
        msg += buf;
    }
    throw NearPole(bad.front(), msg);
}

double max_spacing(const std::vector<double>& grid) {
    double spacing = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        spacing = std::max(spacing, grid[i] - grid[i - 1]);
    }
    return spacing;
}

}  // namespace

double fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
        throw DimensionMismatch("fidelity: operands are " +
                                std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + " and " +
                                std::to_string(v.rows()) + "x" +
                                std::to_string(v.cols()));
    }
    if (!is_unitary(u, kFidelityUnitaryTol)) {
        throw NotUnitary("fidelity: first operand is not unitary within " +
                         std::to_string(kFidelityUnitaryTol));
    }
    if (!is_unitary(v, kFidelityUnitaryTol)) {
        throw NotUnitary("fidelity: second operand is not unitary within " +
                         std::to_string(kFidelityUnitaryTol));
    }
    // Tr(u v^dagger) accumulated entrywise.
    const Complex overlap = (u.array() * v.array().conjugate()).sum();
    const double dim = static_cast<double>(u.rows());
    return std::norm(overlap) / (dim * dim);
}

SpecDigest make_digest(const ChainSpec& spec) {
    return SpecDigest{spec.n_sites, spec.coupling, spec.field_z, spec.field_x};
}

FidelityCurve fidelity_curve(const ChainSpec& spec, SchemeId scheme,
                             const std::vector<double>& t_grid) {
    spec.validate();
    require_ascending(t_grid, "fidelity_curve");
    if (scheme == SchemeId::NestedPerturbative) {
        require_admissible_grid(spec, t_grid, "fidelity_curve");
    }

    ChainContext ctx(spec);
    FidelityCurve curve;
    curve.scheme = scheme;
    curve.t_grid = t_grid;
    curve.values.assign(t_grid.size(), 0.0);
    curve.digest = make_digest(spec);
    parallel_for(static_cast<int>(t_grid.size()), [&](int i) {
        curve.values[i] = ctx.fidelity_at(scheme, t_grid[i]);
    });
    return curve;
}

AdvantageWindow advantage_window(const ChainSpec& spec,
                                 const std::vector<double>& t_grid) {
    spec.validate();
    require_ascending(t_grid, "advantage_window");
    require_admissible_grid(spec, t_grid, "advantage_window");

    ChainContext ctx(spec);
    const int n = static_cast<int>(t_grid.size());
    std::vector<double> gap(n, 0.0);
    parallel_for(n, [&](int i) { gap[i] = ctx.gap_at(t_grid[i]); });

    AdvantageWindow out;
    out.grid_spacing = max_spacing(t_grid);
    out.resolution = out.grid_spacing / 16.0;
    out.digest = make_digest(spec);

    // Bisection toward the sign change of the gap.  `rising` marks a
    // false-to-true boundary.  Probes that land inside the pole guard band
    // stop the refinement early at the current bracket.
    const auto refine = [&](double lo, double hi, bool rising) {
        for (int iter = 0; iter < 8 && (hi - lo) > out.resolution; ++iter) {
            const double mid = 0.5 * (lo + hi);
            bool advantaged = false;
            try {
                advantaged = ctx.gap_at(mid) > kGapNoiseFloor;
            } catch (const NearPole&) {
                break;
            }
            if (advantaged == rising) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    int i = 0;
    while (i < n) {
        if (!(gap[i] > kGapNoiseFloor)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && gap[j + 1] > kGapNoiseFloor) ++j;

        double lo;
        if (i > 0) {
            lo = refine(t_grid[i - 1], t_grid[i], true);
        } else if (t_grid[0] > 0.0) {
            // Both schemes reduce to the identity at t = 0, so the gap
            // vanishes there and the boundary lies inside (0, t_grid[0]].
            lo = refine(0.0, t_grid[0], true);
        } else {
            lo = t_grid[0];
        }

        // A run touching the end of the grid is clamped there rather than
        // extrapolated.
        const double hi = (j + 1 < n) ? refine(t_grid[j], t_grid[j + 1], false)
                                      : t_grid[j];
        out.intervals.emplace_back(lo, hi);
        i = j + 1;
    }
    return out;
}

ImprovementMetrics improvement_metrics(const ChainSpec& spec,
                                       const std::vector<double>& t_grid,
                                       double baseline) {
    spec.validate();
    require_ascending(t_grid, "improvement_metrics");
    require_admissible_grid(spec, t_grid, "improvement_metrics");
    if (!(baseline > 0.0 && baseline < 1.0)) {
        throw ValidationError("improvement_metrics: baseline must lie in (0, 1)");
    }

    ChainContext ctx(spec);
    const int n = static_cast<int>(t_grid.size());
    std::vector<double> plain(n, 0.0);
    std::vector<double> pert(n, 0.0);
    parallel_for(n, [&](int i) {
        plain[i] = ctx.fidelity_at(SchemeId::Trotter2, t_grid[i]);
        pert[i] = ctx.fidelity_at(SchemeId::NestedPerturbative, t_grid[i]);
    });

    if (plain[0] < baseline) {
        throw BaselineNotCrossed(
            "improvement_metrics: fidelity is already below the baseline at "
            "the first grid point");
    }
    int cross = -1;
    for (int i = 0; i + 1 < n; ++i) {
        if (plain[i] >= baseline && plain[i + 1] < baseline) {
            cross = i;
            break;
        }
    }
    if (cross < 0) {
        throw BaselineNotCrossed(
            "improvement_metrics: fidelity never falls through the baseline "
            "on the grid");
    }

    const double span = plain[cross] - plain[cross + 1];
    const double frac = (plain[cross] - baseline) / span;
    const double t_star =
        t_grid[cross] + frac * (t_grid[cross + 1] - t_grid[cross]);

    const double plain_star = ctx.fidelity_at(SchemeId::Trotter2, t_star);
    const double pert_star =
        ctx.fidelity_at(SchemeId::NestedPerturbative, t_star);
    const double plain_error = 1.0 - plain_star;
    if (!(plain_error > 0.0)) {
        throw ConvergenceFailure(
            "improvement_metrics: degenerate baseline crossing");
    }

    ImprovementMetrics metrics;
    metrics.baseline_time = t_star;
    metrics.fidelity_at_baseline = pert_star;
    metrics.error_reduction = 1.0 - (1.0 - pert_star) / plain_error;
    metrics.max_improvement = pert[0] - plain[0];
    for (int i = 0; i < n; ++i) {
        metrics.max_improvement = std::max(metrics.max_improvement, pert[i] - plain[i]);
    }
    return metrics;
}

const char* sweep_axis_name(SweepAxis axis) {
    return axis == SweepAxis::FieldZ ? "g" : "h";
}

SweepResult parameter_sweep(const ChainSpec& base, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<double>& t_grid,
                            double baseline) {
    base.validate();
    if (values.empty()) {
        throw ValidationError("parameter_sweep: no axis values given");
    }

    std::vector<double> ordered = values;
    std::sort(ordered.begin(), ordered.end());

    SweepResult result;
    result.axis = axis;
    result.baseline = baseline;
    result.base_digest = make_digest(base);
    result.rows.reserve(ordered.size());

    for (double value : ordered) {
        ChainSpec spec = base;
        if (axis == SweepAxis::FieldZ) {
            spec.field_z.setConstant(value);
        } else {
            spec.field_x.setConstant(value);
        }
        SweepResult::Row row;
        row.axis_value = value;
        try {
            row.metrics = improvement_metrics(spec, t_grid, baseline);
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
        }
        result.rows.push_back(row);
    }
    return result;
}

std::vector<double> make_grid(double t_min, double t_max, int steps) {
    if (!(t_max > t_min)) {
        throw ValidationError("make_grid: t_max must exceed t_min");
    }
    if (steps < 1) {
        throw ValidationError("make_grid: steps must be positive");
    }
    const double delta = (t_max - t_min) / steps;
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) {
        grid[i] = t_min + (i + 1) * delta;
    }
    grid.back() = t_max;
    return grid;
}

}  // namespace isingpf
