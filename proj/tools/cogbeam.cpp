// SPDX-License-Identifier: Apache-2.0
// cogbeam: command-line driver for the coexistence experiments.
//
//   cogbeam list
//   cogbeam run <experiment> [--config F] [--seed S] [--trials N] [--out F] [--estimator E] [--workers W]
//   cogbeam validate --config F [--experiment NAME]
//
// Exit status: 0 success, 2 usage or configuration error, 1 runtime failure.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cogbeam/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kConfig = 2;

cogbeam::SystemConfig base_config(const std::string& experiment) {
    return experiment.empty() ? cogbeam::SystemConfig{} : cogbeam::default_spec(experiment).config;
}

int run(const std::string& experiment, const std::string& config_path, std::optional<std::uint64_t> seed,
        std::optional<int> trials, const std::string& out_path, const std::string& estimator, int workers) {
    cogbeam::ExperimentSpec spec = cogbeam::default_spec(experiment);
    if (!config_path.empty()) {
        spec.config = cogbeam::load_config(config_path, spec.config);
        spec.sweep = cogbeam::default_sweep(experiment, spec.config);
    }
    if (seed) spec.seed = *seed;
    if (trials) spec.trials = *trials;
    spec.estimator = cogbeam::parse_estimator(estimator);
    spec.workers = workers;
    cogbeam::validate(spec);

    const cogbeam::ResultTable table = cogbeam::run_experiment(spec);
    if (out_path.empty() || out_path == "-") {
        cogbeam::write_csv(table, std::cout);
        return kOk;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kRuntime;
    }
    cogbeam::write_csv(table, out);
    out.close();
    if (!out) {
        std::cerr << "error: write to '" << out_path << "' failed\n";
        return kRuntime;
    }
    std::cerr << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cognitive beamforming coexistence experiments"};
    app.set_version_flag("--version", std::string("cogbeam ") + COGBEAM_VERSION);
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "List the available experiments");

    std::string experiment;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out_path;
    std::string estimator = "known_noise";
    int workers = 1;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment and write its CSV table");
    run_cmd->add_option("experiment", experiment, "Experiment name (see `list`)")->required();
    run_cmd->add_option("--config", config_path, "key = value file overlaid on the experiment defaults")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", seed, "Base seed");
    run_cmd->add_option("--trials", trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_path, "Output CSV path, `-` for stdout");
    run_cmd->add_option("--estimator", estimator, "known_noise | unknown_noise | oracle");
    run_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    std::string validate_path;
    std::string validate_experiment;
    auto* validate_cmd = app.add_subcommand("validate", "Check a config file");
    validate_cmd->add_option("--config", validate_path, "Config file")->required();
    validate_cmd->add_option("--experiment", validate_experiment, "Overlay onto this experiment's defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& name : cogbeam::experiment_names()) {
                std::cout << name << "  " << cogbeam::experiment_description(name) << '\n';
            }
            return kOk;
        }
        if (validate_cmd->parsed()) {
            const auto cfg = cogbeam::load_config(validate_path, base_config(validate_experiment));
            std::cout << cogbeam::format_config(cfg);
            return kOk;
        }
        return run(experiment, config_path, seed, trials, out_path, estimator, workers);
    } catch (const cogbeam::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const cogbeam::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
