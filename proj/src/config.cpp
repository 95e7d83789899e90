#include "isingpf/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"

namespace isingpf {

namespace {

using nlohmann::json;

const char* kExperimentNames[] = {"single-qubit", "two-qubit", "chain-curve",
                                  "window",       "sweep",     "count"};

double get_number(const json& doc, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_number()) {
        throw ParseError("config: key '" + key + "' must be a number");
    }
    return v.get<double>();
}

int get_integer(const json& doc, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_number_integer()) {
        throw ParseError("config: key '" + key + "' must be an integer");
    }
    return v.get<int>();
}

std::string get_string(const json& doc, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_string()) {
        throw ParseError("config: key '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::vector<double> get_number_array(const json& doc, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_array() || v.empty()) {
        throw ParseError("config: key '" + key + "' must be a non-empty array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& item : v) {
        if (!item.is_number()) {
            throw ParseError("config: key '" + key +
                             "' must contain only numbers");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

void require_finite(const std::vector<double>& values, const std::string& key) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ValidationError("config: key '" + key +
                                  "' contains a non-finite value");
        }
    }
}

void check_site_count(int n_sites) {
    if (n_sites < 2) {
        throw ValidationError("config: n_sites must be at least 2, got " +
                              std::to_string(n_sites));
    }
    if (n_sites % 2 != 0) {
        throw ValidationError("config: n_sites must be even, got " +
                              std::to_string(n_sites));
    }
    if (n_sites > 12) {
        throw ValidationError("config: n_sites must not exceed 12, got " +
                              std::to_string(n_sites));
    }
}

// Reads one chain parameter, which must appear either as a uniform scalar or
// as a per-entry array, never both.
ParamSpec read_param(const json& doc, const std::string& scalar_key,
                     const std::string& array_key) {
    const bool has_scalar = doc.contains(scalar_key);
    const bool has_array = doc.contains(array_key);
    if (has_scalar && has_array) {
        throw ValidationError("config: '" + scalar_key + "' and '" + array_key +
                              "' are mutually exclusive");
    }
    if (!has_scalar && !has_array) {
        throw ValidationError("config: one of '" + scalar_key + "' or '" +
                              array_key + "' is required");
    }
    ParamSpec param;
    if (has_scalar) {
        param.uniform = true;
        param.value = get_number(doc, scalar_key);
        if (!std::isfinite(param.value)) {
            throw ValidationError("config: key '" + scalar_key +
                                  "' must be finite");
        }
    } else {
        param.uniform = false;
        param.per_site = get_number_array(doc, array_key);
        require_finite(param.per_site, array_key);
    }
    return param;
}

void check_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                        const std::string& experiment) {
    for (const auto& item : doc.items()) {
        if (allowed.count(item.key()) == 0) {
            throw ParseError("config: unknown key '" + item.key() +
                             "' for experiment '" + experiment + "'");
        }
    }
}

void parse_grid(const json& doc, RunConfig& cfg) {
    if (doc.contains("t_min")) {
        cfg.t_min = get_number(doc, "t_min");
    } else {
        cfg.defaults_applied.push_back("t_min=0");
    }
    if (doc.contains("t_max")) {
        cfg.t_max = get_number(doc, "t_max");
    } else {
        cfg.defaults_applied.push_back("t_max=1.5");
    }
    if (doc.contains("t_steps")) {
        cfg.t_steps = get_integer(doc, "t_steps");
    } else {
        cfg.defaults_applied.push_back("t_steps=150");
    }
    if (!(cfg.t_min >= 0.0)) {
        throw ValidationError("config: t_min must be >= 0");
    }
    if (!(cfg.t_max > cfg.t_min)) {
        throw ValidationError("config: t_max must exceed t_min");
    }
    if (cfg.t_steps < 2) {
        throw ValidationError("config: t_steps must be at least 2");
    }
}

void parse_axis(const json& doc, RunConfig& cfg, bool required) {
    const bool has_axis = doc.contains("axis");
    const bool has_values = doc.contains("values");
    if (has_axis != has_values) {
        throw ValidationError(
            "config: 'axis' and 'values' must be given together");
    }
    if (!has_axis) {
        if (required) {
            throw ValidationError("config: 'axis' and 'values' are required "
                                  "for this experiment");
        }
        return;
    }
    const std::string axis = get_string(doc, "axis");
    if (axis == "g") {
        cfg.axis = SweepAxis::FieldZ;
    } else if (axis == "h") {
        cfg.axis = SweepAxis::FieldX;
    } else {
        throw ValidationError("config: axis must be 'g' or 'h', got '" + axis +
                              "'");
    }
    cfg.axis_values = get_number_array(doc, "values");
    require_finite(cfg.axis_values, "values");
    cfg.has_axis = true;
}

void parse_output(const json& doc, RunConfig& cfg) {
    if (doc.contains("output")) {
        cfg.output_name = get_string(doc, "output");
    } else {
        cfg.output_name = experiment_name(cfg.experiment);
        cfg.defaults_applied.push_back("output=" + cfg.output_name);
    }
    if (cfg.output_name.empty() ||
        cfg.output_name.find('/') != std::string::npos ||
        cfg.output_name.find('\\') != std::string::npos) {
        throw ValidationError(
            "config: 'output' must be a non-empty file stem without path "
            "separators");
    }
    if (doc.contains("format")) {
        const std::string format = get_string(doc, "format");
        if (format == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (format == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw ValidationError("config: format must be 'csv' or 'json', got '" +
                                  format + "'");
        }
    } else {
        cfg.format = OutputFormat::Csv;
        cfg.defaults_applied.push_back("format=csv");
    }
}

void parse_sizes(const json& doc, RunConfig& cfg, bool allow_list) {
    const json& v = doc.at("n_sites");
    if (v.is_number_integer()) {
        const int n = v.get<int>();
        check_site_count(n);
        cfg.sizes = {n};
        return;
    }
    if (allow_list && v.is_array() && !v.empty()) {
        for (const json& item : v) {
            if (!item.is_number_integer()) {
                throw ParseError("config: 'n_sites' entries must be integers");
            }
            const int n = item.get<int>();
            check_site_count(n);
            cfg.sizes.push_back(n);
        }
        for (std::size_t i = 1; i < cfg.sizes.size(); ++i) {
            if (cfg.sizes[i] <= cfg.sizes[i - 1]) {
                throw ValidationError(
                    "config: 'n_sites' list must be strictly ascending");
            }
        }
        return;
    }
    throw ParseError(allow_list
                         ? "config: 'n_sites' must be an integer or an array "
                           "of integers"
                         : "config: 'n_sites' must be an integer");
}

void parse_chain_params(const json& doc, RunConfig& cfg) {
    cfg.coupling = read_param(doc, "J", "J_per_bond");
    cfg.field_z = read_param(doc, "g", "g_per_site");
    cfg.field_x = read_param(doc, "h", "h_per_site");

    const bool any_array =
        !cfg.coupling.uniform || !cfg.field_z.uniform || !cfg.field_x.uniform;
    if (cfg.sizes.size() > 1 && any_array) {
        throw ValidationError(
            "config: per-site parameter arrays cannot be combined with an "
            "'n_sites' list");
    }
    const auto check_len = [&](const ParamSpec& p, const std::string& key) {
        if (!p.uniform &&
            p.per_site.size() != static_cast<std::size_t>(cfg.sizes.front())) {
            throw ValidationError("config: '" + key + "' has length " +
                                  std::to_string(p.per_site.size()) +
                                  ", expected " +
                                  std::to_string(cfg.sizes.front()));
        }
    };
    check_len(cfg.coupling, "J_per_bond");
    check_len(cfg.field_z, "g_per_site");
    check_len(cfg.field_x, "h_per_site");
}

const std::map<std::string, std::string>& preset_table() {
    static const std::map<std::string, std::string> presets = {
        {"fig1",
         R"({"experiment":"single-qubit","alpha":0.1,
             "t_min":0.0,"t_max":1.5,"t_steps":150,"output":"fig1"})"},
        {"fig2",
         R"({"experiment":"chain-curve","n_sites":6,"J":1.0,"g":1.0,"h":0.3,
             "t_min":0.0,"t_max":1.5,"t_steps":150,"output":"fig2"})"},
        {"fig3",
         R"({"experiment":"chain-curve","n_sites":[6,8,10],"J":1.0,"g":0.2,"h":0.3,
             "t_min":0.0,"t_max":1.0,"t_steps":100,"output":"fig3"})"},
        {"fig4",
         R"({"experiment":"chain-curve","n_sites":6,"J":1.0,"g":0.2,"h":0.3,
             "axis":"h","values":[0.1,0.3,0.5],
             "t_min":0.0,"t_max":1.5,"t_steps":150,"output":"fig4"})"},
        {"fig5",
         R"({"experiment":"window","n_sites":6,"J":1.0,"g":0.2,"h":0.3,
             "axis":"g",
             "values":[0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2.0],
             "t_min":0.0,"t_max":1.5,"t_steps":150,"output":"fig5"})"},
        {"fig6",
         R"({"experiment":"sweep","n_sites":6,"J":1.0,"g":0.2,"h":0.3,
             "axis":"g",
             "values":[0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2.0],
             "baseline":0.9999,
             "t_min":0.0,"t_max":1.5,"t_steps":150,"output":"fig6"})"},
    };
    return presets;
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
    return kExperimentNames[static_cast<int>(kind)];
}

ChainSpec RunConfig::chain_spec(int n_sites) const {
    const auto expand = [n_sites](const ParamSpec& p) {
        if (p.uniform) {
            return RealVector(RealVector::Constant(n_sites, p.value));
        }
        RealVector v(static_cast<Eigen::Index>(p.per_site.size()));
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            v[k] = p.per_site[static_cast<std::size_t>(k)];
        }
        return v;
    };
    ChainSpec spec;
    spec.n_sites = n_sites;
    spec.coupling = expand(coupling);
    spec.field_z = expand(field_z);
    spec.field_x = expand(field_x);
    spec.validate();
    return spec;
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("config: top level must be an object");
    }
    if (!doc.contains("experiment")) {
        throw ValidationError("config: 'experiment' is required");
    }

    RunConfig cfg;
    const std::string experiment = get_string(doc, "experiment");
    bool known = false;
    for (int k = 0; k < 6; ++k) {
        if (experiment == kExperimentNames[k]) {
            cfg.experiment = static_cast<ExperimentKind>(k);
            known = true;
            break;
        }
    }
    if (!known) {
        throw ValidationError("config: unknown experiment '" + experiment + "'");
    }

    const std::set<std::string> common = {"experiment", "output", "format"};
    const std::set<std::string> grid_keys = {"t_min", "t_max", "t_steps"};
    const std::set<std::string> chain_keys = {"n_sites", "J", "J_per_bond",
                                              "g",       "h", "g_per_site",
                                              "h_per_site"};

    switch (cfg.experiment) {
        case ExperimentKind::SingleQubit: {
            std::set<std::string> allowed = common;
            allowed.insert(grid_keys.begin(), grid_keys.end());
            allowed.insert("alpha");
            check_unknown_keys(doc, allowed, experiment);
            if (doc.contains("alpha")) {
                cfg.alpha = get_number(doc, "alpha");
            } else {
                cfg.defaults_applied.push_back("alpha=0.1");
            }
            parse_grid(doc, cfg);
            break;
        }
        case ExperimentKind::TwoQubit: {
            std::set<std::string> allowed = common;
            allowed.insert(grid_keys.begin(), grid_keys.end());
            allowed.insert({"J", "g1", "g2", "h1", "h2", "alpha"});
            check_unknown_keys(doc, allowed, experiment);
            for (const char* key : {"J", "g1", "g2", "h1", "h2"}) {
                if (!doc.contains(key)) {
                    throw ValidationError(std::string("config: '") + key +
                                          "' is required for the two-qubit "
                                          "experiment");
                }
            }
            cfg.bond_coupling = get_number(doc, "J");
            cfg.bond_g1 = get_number(doc, "g1");
            cfg.bond_g2 = get_number(doc, "g2");
            cfg.bond_h1 = get_number(doc, "h1");
            cfg.bond_h2 = get_number(doc, "h2");
            if (doc.contains("alpha")) {
                cfg.alpha = get_number(doc, "alpha");
            } else {
                cfg.defaults_applied.push_back("alpha=0.1");
            }
            parse_grid(doc, cfg);
            break;
        }
        case ExperimentKind::ChainCurve: {
            std::set<std::string> allowed = common;
            allowed.insert(grid_keys.begin(), grid_keys.end());
            allowed.insert(chain_keys.begin(), chain_keys.end());
            allowed.insert({"axis", "values"});
            check_unknown_keys(doc, allowed, experiment);
            if (!doc.contains("n_sites")) {
                throw ValidationError("config: 'n_sites' is required");
            }
            parse_sizes(doc, cfg, /*allow_list=*/true);
            parse_chain_params(doc, cfg);
            parse_axis(doc, cfg, /*required=*/false);
            if (cfg.has_axis && cfg.sizes.size() > 1) {
                throw ValidationError(
                    "config: an axis scan cannot be combined with an "
                    "'n_sites' list");
            }
            parse_grid(doc, cfg);
            break;
        }
        case ExperimentKind::Window: {
            std::set<std::string> allowed = common;
            allowed.insert(grid_keys.begin(), grid_keys.end());
            allowed.insert(chain_keys.begin(), chain_keys.end());
            allowed.insert({"axis", "values"});
            check_unknown_keys(doc, allowed, experiment);
            if (!doc.contains("n_sites")) {
                throw ValidationError("config: 'n_sites' is required");
            }
            parse_sizes(doc, cfg, /*allow_list=*/false);
            parse_chain_params(doc, cfg);
            if (!cfg.field_z.uniform || !cfg.field_x.uniform) {
                throw ValidationError(
                    "config: the window experiment reports one (g, h) pair "
                    "per row and needs uniform fields");
            }
            parse_axis(doc, cfg, /*required=*/false);
            parse_grid(doc, cfg);
            break;
        }
        case ExperimentKind::Sweep: {
            std::set<std::string> allowed = common;
            allowed.insert(grid_keys.begin(), grid_keys.end());
            allowed.insert(chain_keys.begin(), chain_keys.end());
            allowed.insert({"axis", "values", "baseline"});
            check_unknown_keys(doc, allowed, experiment);
            if (!doc.contains("n_sites")) {
                throw ValidationError("config: 'n_sites' is required");
            }
            parse_sizes(doc, cfg, /*allow_list=*/false);
            parse_chain_params(doc, cfg);
            parse_axis(doc, cfg, /*required=*/true);
            if (doc.contains("baseline")) {
                cfg.baseline = get_number(doc, "baseline");
                if (!(cfg.baseline > 0.0 && cfg.baseline < 1.0)) {
                    throw ValidationError(
                        "config: baseline must lie strictly between 0 and 1");
                }
            } else {
                cfg.defaults_applied.push_back("baseline=0.9999");
            }
            parse_grid(doc, cfg);
            break;
        }
        case ExperimentKind::Count: {
            std::set<std::string> allowed = common;
            allowed.insert("n_sites");
            check_unknown_keys(doc, allowed, experiment);
            if (!doc.contains("n_sites")) {
                throw ValidationError("config: 'n_sites' is required");
            }
            parse_sizes(doc, cfg, /*allow_list=*/false);
            break;
        }
    }

    parse_output(doc, cfg);
    return cfg;
}

RunConfig preset_config(const std::string& name) {
    const auto& table = preset_table();
    const auto it = table.find(name);
    if (it == table.end()) {
        std::string names;
        for (const auto& entry : table) {
            if (!names.empty()) names += ", ";
            names += entry.first;
        }
        throw ValidationError("unknown preset '" + name + "'; available: " +
                              names);
    }
    RunConfig cfg = parse_config(it->second);
    cfg.preset = name;
    return cfg;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& entry : preset_table()) {
        names.push_back(entry.first);
    }
    return names;
}

}  // namespace isingpf
