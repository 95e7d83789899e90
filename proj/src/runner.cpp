#include "isingpf/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "isingpf/version.hpp"

namespace isingpf {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// One output cell: either a number (formatted with 17 significant digits in
// CSV) or a verbatim string.
struct Cell {
    bool is_text = false;
    double number = 0.0;
    std::string text;

    static Cell num(double v) { return Cell{false, v, {}}; }
    static Cell str(std::string v) { return Cell{true, 0.0, std::move(v)}; }
};

struct Table {
    std::string suffix;  // appended to the output stem; may be empty
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct ExperimentOutput {
    std::vector<Table> tables;
    std::vector<std::string> notes;
    bool branch_crossed = false;  // any tan argument beyond the first branch
};

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Short value rendering for file names, e.g. "0.1" or "2".
std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Experiment executors.
// ---------------------------------------------------------------------------

void require_admissible_points(const std::vector<double>& args,
                               const std::vector<double>& grid,
                               const char* context) {
    std::vector<double> bad;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (std::abs(args[i]) >= kScalingLimitBand && !pole_admissible(args[i])) {
            bad.push_back(grid[i]);
        }
    }
    if (bad.empty()) return;
    std::string msg = std::string(context) +
                      ": grid points inadmissible for the rescaled transverse "
                      "step: t =";
    for (double t : bad) msg += " " + format_value(t);
    throw NearPole(bad.front(), msg);
}

ExperimentOutput run_single_qubit(const RunConfig& cfg) {
    const std::vector<double> grid = cfg.grid();
    std::vector<double> args = grid;  // the rescaling argument is t itself
    require_admissible_points(args, grid, "single-qubit");

    Table table;
    table.columns = {"t", "fidelity_trotter2", "fidelity_perturbative"};
    for (double t : grid) {
        const ComplexMatrix exact = single_qubit_exact(cfg.alpha, t);
        const double f_plain = fidelity(single_qubit_trotter2(cfg.alpha, t), exact);
        const double f_pert =
            fidelity(single_qubit_perturbative(cfg.alpha, t), exact);
        table.rows.push_back({Cell::num(t), Cell::num(f_plain), Cell::num(f_pert)});
    }

    ExperimentOutput out;
    out.branch_crossed = grid.back() > std::numbers::pi / 2.0;
    out.tables.push_back(std::move(table));
    return out;
}

ExperimentOutput run_two_qubit(const RunConfig& cfg) {
    const std::vector<double> grid = cfg.grid();
    std::vector<double> args;
    args.reserve(grid.size());
    for (double t : grid) args.push_back(cfg.bond_coupling * t);
    require_admissible_points(args, grid, "two-qubit");

    Table table;
    table.columns = {"t", "fidelity_trotter2", "fidelity_perturbative"};
    for (double t : grid) {
        const ComplexMatrix exact =
            two_qubit_exact(cfg.bond_coupling, cfg.bond_g1, cfg.bond_g2,
                            cfg.bond_h1, cfg.bond_h2, cfg.alpha, t);
        const double f_plain =
            fidelity(two_qubit_trotter2(cfg.bond_coupling, cfg.bond_g1,
                                        cfg.bond_g2, cfg.bond_h1, cfg.bond_h2,
                                        cfg.alpha, t),
                     exact);
        const double f_pert =
            fidelity(two_qubit_perturbative(cfg.bond_coupling, cfg.bond_g1,
                                            cfg.bond_g2, cfg.bond_h1,
                                            cfg.bond_h2, cfg.alpha, t),
                     exact);
        table.rows.push_back({Cell::num(t), Cell::num(f_plain), Cell::num(f_pert)});
    }

    ExperimentOutput out;
    out.branch_crossed =
        std::abs(cfg.bond_coupling) * grid.back() > std::numbers::pi / 2.0;
    out.tables.push_back(std::move(table));
    return out;
}

bool spec_crosses_branch(const ChainSpec& spec, double t_max) {
    for (double arg : coefficient_arguments(spec, t_max)) {
        if (std::abs(arg) > std::numbers::pi / 2.0) return true;
    }
    return false;
}

ExperimentOutput run_chain_curve(const RunConfig& cfg) {
    const std::vector<double> grid = cfg.grid();
    ExperimentOutput out;

    std::vector<double> axis_values;
    if (cfg.has_axis) {
        axis_values = cfg.axis_values;
    }

    for (int size : cfg.sizes) {
        const int variants = cfg.has_axis ? static_cast<int>(axis_values.size()) : 1;
        for (int v = 0; v < variants; ++v) {
            ChainSpec spec = cfg.chain_spec(size);
            std::string suffix;
            if (cfg.sizes.size() > 1) {
                suffix += "_n" + std::to_string(size);
            }
            if (cfg.has_axis) {
                const double value = axis_values[v];
                if (cfg.axis == SweepAxis::FieldZ) {
                    spec.field_z.setConstant(value);
                } else {
                    spec.field_x.setConstant(value);
                }
                suffix += "_" + std::string(sweep_axis_name(cfg.axis)) +
                          format_value(value);
            }

            const FidelityCurve plain =
                fidelity_curve(spec, SchemeId::Trotter2, grid);
            const FidelityCurve unit =
                fidelity_curve(spec, SchemeId::NestedUnit, grid);
            const FidelityCurve pert =
                fidelity_curve(spec, SchemeId::NestedPerturbative, grid);

            Table table;
            table.suffix = suffix;
            table.columns = {"t", "fidelity_trotter2", "fidelity_nested_unit",
                             "fidelity_nested_pert"};
            for (std::size_t i = 0; i < grid.size(); ++i) {
                table.rows.push_back({Cell::num(grid[i]), Cell::num(plain.values[i]),
                                      Cell::num(unit.values[i]),
                                      Cell::num(pert.values[i])});
            }
            out.tables.push_back(std::move(table));
            out.branch_crossed =
                out.branch_crossed || spec_crosses_branch(spec, grid.back());
        }
    }
    return out;
}

ExperimentOutput run_window(const RunConfig& cfg) {
    const std::vector<double> grid = cfg.grid();
    ExperimentOutput out;

    Table table;
    table.columns = {"g", "h", "t_lo", "t_hi"};

    std::vector<double> axis_values = cfg.has_axis
                                          ? cfg.axis_values
                                          : std::vector<double>{};
    const int variants = cfg.has_axis ? static_cast<int>(axis_values.size()) : 1;
    for (int v = 0; v < variants; ++v) {
        ChainSpec spec = cfg.chain_spec(cfg.sizes.front());
        double g_value = cfg.field_z.value;
        double h_value = cfg.field_x.value;
        if (cfg.has_axis) {
            const double value = axis_values[v];
            if (cfg.axis == SweepAxis::FieldZ) {
                spec.field_z.setConstant(value);
                g_value = value;
            } else {
                spec.field_x.setConstant(value);
                h_value = value;
            }
        }
        const AdvantageWindow window = advantage_window(spec, grid);
        for (const auto& [lo, hi] : window.intervals) {
            table.rows.push_back({Cell::num(g_value), Cell::num(h_value),
                                  Cell::num(lo), Cell::num(hi)});
        }
        out.branch_crossed =
            out.branch_crossed || spec_crosses_branch(spec, grid.back());
        if (window.intervals.empty()) {
            out.notes.push_back("window: no advantage interval at " +
                                std::string(sweep_axis_name(cfg.axis)) + "=" +
                                format_value(cfg.has_axis ? axis_values[v]
                                                          : g_value));
        }
    }
    out.tables.push_back(std::move(table));
    return out;
}

ExperimentOutput run_sweep(const RunConfig& cfg) {
    const std::vector<double> grid = cfg.grid();
    const ChainSpec base = cfg.chain_spec(cfg.sizes.front());
    const SweepResult sweep =
        parameter_sweep(base, cfg.axis, cfg.axis_values, grid, cfg.baseline);

    ExperimentOutput out;
    Table table;
    table.columns = {"axis_value", "max_improvement", "baseline_time",
                     "fidelity_at_baseline", "error_reduction"};
    for (const auto& row : sweep.rows) {
        if (!row.ok) {
            out.notes.push_back("sweep point " +
                                std::string(sweep_axis_name(cfg.axis)) + "=" +
                                format_value(row.axis_value) + " failed: " +
                                row.error);
            continue;
        }
        table.rows.push_back({Cell::num(row.axis_value),
                              Cell::num(row.metrics.max_improvement),
                              Cell::num(row.metrics.baseline_time),
                              Cell::num(row.metrics.fidelity_at_baseline),
                              Cell::num(row.metrics.error_reduction)});
    }
    out.tables.push_back(std::move(table));

    for (const auto& row : sweep.rows) {
        ChainSpec spec = base;
        if (cfg.axis == SweepAxis::FieldZ) {
            spec.field_z.setConstant(row.axis_value);
        } else {
            spec.field_x.setConstant(row.axis_value);
        }
        out.branch_crossed =
            out.branch_crossed || spec_crosses_branch(spec, grid.back());
    }
    return out;
}

ExperimentOutput run_count(const RunConfig& cfg) {
    const ChainSpec spec = ChainSpec::uniform(cfg.sizes.front(), 0.0, 0.0, 0.0);

    ExperimentOutput out;
    Table table;
    table.columns = {"scheme", "local_unitaries", "ratio_vs_trotter2"};
    for (SchemeId scheme : {SchemeId::Trotter2, SchemeId::NestedUnit,
                            SchemeId::NestedPerturbative}) {
        const UnitaryCount count = local_unitary_count(scheme, spec);
        const double ratio = static_cast<double>(count.ratio_num) /
                             static_cast<double>(count.ratio_den);
        table.rows.push_back({Cell::str(scheme_name(scheme)),
                              Cell::num(static_cast<double>(count.count)),
                              Cell::num(ratio)});
    }
    out.tables.push_back(std::move(table));
    return out;
}

ExperimentOutput execute(const RunConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::SingleQubit:
            return run_single_qubit(cfg);
        case ExperimentKind::TwoQubit:
            return run_two_qubit(cfg);
        case ExperimentKind::ChainCurve:
            return run_chain_curve(cfg);
        case ExperimentKind::Window:
            return run_window(cfg);
        case ExperimentKind::Sweep:
            return run_sweep(cfg);
        case ExperimentKind::Count:
            return run_count(cfg);
    }
    throw ValidationError("run: unknown experiment kind");
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c].is_text ? row[c].text : format_number(row[c].number);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table) {
    json doc;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json cells = json::array();
        for (const auto& cell : row) {
            if (cell.is_text) {
                cells.push_back(cell.text);
            } else {
                cells.push_back(cell.number);
            }
        }
        rows.push_back(std::move(cells));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

json param_json(const ParamSpec& p) {
    if (p.uniform) return json(p.value);
    return json(p.per_site);
}

json build_metadata(const RunConfig& cfg, const ExperimentOutput& out,
                    const std::vector<std::string>& file_names) {
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["experiment"] = experiment_name(cfg.experiment);
    meta["preset"] = cfg.preset;
    meta["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
    meta["files"] = file_names;
    meta["defaults_applied"] = cfg.defaults_applied;
    meta["notes"] = out.notes;
    meta["tan_branch_crossed"] = out.branch_crossed;

    json tolerances;
    tolerances["hermitian"] = kHermitianTol;
    tolerances["unitary"] = kUnitaryTol;
    tolerances["fidelity_unitary"] = kFidelityUnitaryTol;
    tolerances["pole_guard"] = kPoleGuard;
    tolerances["scaling_limit_band"] = kScalingLimitBand;
    meta["tolerances"] = std::move(tolerances);

    json params;
    switch (cfg.experiment) {
        case ExperimentKind::SingleQubit:
            params["alpha"] = cfg.alpha;
            break;
        case ExperimentKind::TwoQubit:
            params["J"] = cfg.bond_coupling;
            params["g1"] = cfg.bond_g1;
            params["g2"] = cfg.bond_g2;
            params["h1"] = cfg.bond_h1;
            params["h2"] = cfg.bond_h2;
            params["alpha"] = cfg.alpha;
            break;
        case ExperimentKind::ChainCurve:
        case ExperimentKind::Window:
        case ExperimentKind::Sweep:
            params["n_sites"] = cfg.sizes;
            params["J"] = param_json(cfg.coupling);
            params["g"] = param_json(cfg.field_z);
            params["h"] = param_json(cfg.field_x);
            if (cfg.has_axis) {
                params["axis"] = sweep_axis_name(cfg.axis);
                params["values"] = cfg.axis_values;
            }
            if (cfg.experiment == ExperimentKind::Sweep) {
                params["baseline"] = cfg.baseline;
            }
            break;
        case ExperimentKind::Count:
            params["n_sites"] = cfg.sizes;
            break;
    }
    meta["parameters"] = std::move(params);

    if (cfg.experiment != ExperimentKind::Count) {
        json grid;
        grid["t_min"] = cfg.t_min;
        grid["t_max"] = cfg.t_max;
        grid["t_steps"] = cfg.t_steps;
        grid["spacing"] = (cfg.t_max - cfg.t_min) / cfg.t_steps;
        meta["grid"] = std::move(grid);
    }
    return meta;
}

int classify(const Error& e) {
    if (dynamic_cast<const NearPole*>(&e) != nullptr ||
        dynamic_cast<const BaselineNotCrossed*>(&e) != nullptr) {
        return kExitNumericDomain;
    }
    if (dynamic_cast<const ParseError*>(&e) != nullptr ||
        dynamic_cast<const ValidationError*>(&e) != nullptr) {
        return kExitConfigError;
    }
    return kExitNumericFailure;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw ValidationError("run: cannot open '" + path.string() +
                              "' for writing");
    }
    stream << content;
    stream.flush();
    if (!stream) {
        throw ValidationError("run: failed writing '" + path.string() + "'");
    }
}

}  // namespace

RunArtifacts run(const RunConfig& cfg, const std::string& out_dir) {
    RunArtifacts art;
    std::vector<std::pair<fs::path, fs::path>> staged;  // tmp -> final

    const auto cleanup = [&staged]() {
        for (const auto& [tmp, final_path] : staged) {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
    };

    try {
        const fs::path dir(out_dir);
        fs::create_directories(dir);

        const ExperimentOutput out = execute(cfg);

        const char* ext = cfg.format == OutputFormat::Csv ? ".csv" : ".json";
        std::vector<std::string> file_names;
        std::vector<std::string> contents;
        for (const Table& table : out.tables) {
            file_names.push_back(cfg.output_name + table.suffix + ext);
            contents.push_back(cfg.format == OutputFormat::Csv
                                   ? render_csv(table)
                                   : render_json(table));
        }
        const std::string meta_name = cfg.output_name + ".meta.json";
        file_names.push_back(meta_name);
        contents.push_back(build_metadata(cfg, out, file_names).dump(2) + "\n");

        // Stage everything first, then rename; a failure anywhere leaves no
        // partial output behind.
        for (std::size_t i = 0; i < file_names.size(); ++i) {
            const fs::path final_path = dir / file_names[i];
            const fs::path tmp_path = dir / (file_names[i] + ".tmp");
            write_file(tmp_path, contents[i]);
            staged.emplace_back(tmp_path, final_path);
        }
        for (const auto& [tmp, final_path] : staged) {
            fs::rename(tmp, final_path);
            art.files.push_back(final_path.string());
        }
        art.exit_code = kExitOk;
    } catch (const Error& e) {
        cleanup();
        art.files.clear();
        art.exit_code = classify(e);
        art.diagnostic = e.what();
    } catch (const std::exception& e) {
        cleanup();
        art.files.clear();
        art.exit_code = kExitNumericFailure;
        art.diagnostic = e.what();
    }
    return art;
}

}  // namespace isingpf
