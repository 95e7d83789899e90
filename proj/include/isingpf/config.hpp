#pragma once

#include <string>
#include <vector>

#include "isingpf/analysis.hpp"

namespace isingpf {

enum class ExperimentKind { SingleQubit, TwoQubit, ChainCurve, Window, Sweep, Count };

const char* experiment_name(ExperimentKind kind);

enum class OutputFormat { Csv, Json };

// A chain parameter given either as one uniform value or per site/bond.
struct ParamSpec {
    bool uniform = true;
    double value = 0.0;
    std::vector<double> per_site;  // used when !uniform
};

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::ChainCurve;
    std::string preset;  // non-empty when built from a named preset

    // Chain experiments.  A size-comparison run carries several entries, in
    // which case all parameters must be uniform.
    std::vector<int> sizes;
    ParamSpec coupling;
    ParamSpec field_z;
    ParamSpec field_x;

    // Single-site and single-bond experiments.
    double alpha = 0.1;
    double bond_coupling = 0.0;
    double bond_g1 = 0.0;
    double bond_g2 = 0.0;
    double bond_h1 = 0.0;
    double bond_h2 = 0.0;

    // Time grid over (t_min, t_max].
    double t_min = 0.0;
    double t_max = 1.5;
    int t_steps = 150;

    bool has_axis = false;
    SweepAxis axis = SweepAxis::FieldZ;
    std::vector<double> axis_values;

    double baseline = kDefaultBaseline;

    std::string output_name;
    OutputFormat format = OutputFormat::Csv;

    // Keys that fell back to documented defaults, echoed into the metadata.
    std::vector<std::string> defaults_applied;

    ChainSpec chain_spec(int n_sites) const;
    std::vector<double> grid() const { return make_grid(t_min, t_max, t_steps); }
};

// Parses and validates a JSON config.  Unknown keys are rejected with
// ParseError; violated invariants raise ValidationError naming the invariant.
RunConfig parse_config(const std::string& text);

// Built-in configurations fig1 .. fig6.  Throws ValidationError for an
// unknown name.
RunConfig preset_config(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace isingpf
