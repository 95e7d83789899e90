#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "isingpf/runner.hpp"
#include "isingpf/version.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& preset,
                const std::string& out_dir, const std::string& format) {
    isingpf::RunConfig cfg;
    try {
        if (!preset.empty()) {
            cfg = isingpf::preset_config(preset);
        } else {
            std::ifstream stream(config_path);
            if (!stream) {
                std::cerr << "error: cannot read config file '" << config_path
                          << "'\n";
                return isingpf::kExitConfigError;
            }
            std::ostringstream buffer;
            buffer << stream.rdbuf();
            cfg = isingpf::parse_config(buffer.str());
        }
        if (!format.empty()) {
            if (format == "csv") {
                cfg.format = isingpf::OutputFormat::Csv;
            } else if (format == "json") {
                cfg.format = isingpf::OutputFormat::Json;
            } else {
                std::cerr << "error: --format must be csv or json\n";
                return isingpf::kExitConfigError;
            }
        }
    } catch (const isingpf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return isingpf::kExitConfigError;
    }

    const isingpf::RunArtifacts artifacts = isingpf::run(cfg, out_dir);
    if (artifacts.exit_code != isingpf::kExitOk) {
        std::cerr << "error: " << artifacts.diagnostic << "\n";
        return artifacts.exit_code;
    }
    for (const std::string& file : artifacts.files) {
        std::cout << file << "\n";
    }
    return isingpf::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product-formula fidelity experiments for short Ising chains"};
    app.set_version_flag("--version", std::string(isingpf::kVersion));

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "List built-in configurations");

    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    std::string format;

    CLI::App* run_cmd =
        app.add_subcommand("run", "Execute one experiment and write its tables");
    run_cmd->add_option("--config", config_path, "Path to a JSON config file");
    run_cmd->add_option("--preset", preset, "Name of a built-in configuration");
    run_cmd->add_option("--out", out_dir, "Output directory (default: .)");
    run_cmd->add_option("--format", format, "Override output format: csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 reports help/version with exit code 0; everything else is a
        // configuration problem.
        return code == 0 ? 0 : isingpf::kExitConfigError;
    }

    if (list_presets) {
        for (const std::string& name : isingpf::preset_names()) {
            std::cout << name << "\n";
        }
        return isingpf::kExitOk;
    }

    if (run_cmd->parsed()) {
        if (config_path.empty() == preset.empty()) {
            std::cerr << "error: give exactly one of --config or --preset\n";
            return isingpf::kExitConfigError;
        }
        return run_command(config_path, preset, out_dir, format);
    }

    std::cout << app.help();
    return isingpf::kExitOk;
}
