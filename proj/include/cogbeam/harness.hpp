// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cogbeam/scenario.hpp"

namespace cogbeam {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// How the CR obtains its null-space basis from the learning phase.
///  known_noise   - eigenvectors of the sample covariance, noise power known, rank taken
///                  as correctly detected (the true d_eff);
///  unknown_noise - MDL rank and estimated noise power;
///  oracle        - the true null space of Q_s.
enum class Estimator { known_noise, unknown_noise, oracle };

std::string_view to_string(Estimator e);
Estimator parse_estimator(std::string_view name);

struct Sweep {
    std::string parameter;
    std::vector<double> values;  // strictly increasing
};

struct ExperimentSpec {
    std::string name;
    SystemConfig config;
    Sweep sweep;  // empty values: the experiment's default sweep for `config`
    int trials = 500;
    std::uint64_t seed = 1;
    Estimator estimator = Estimator::known_noise;
    int workers = 1;
    // Stream ids for the trials; empty means 0 .. trials-1.
    std::vector<std::uint64_t> trial_ids;
};

struct ResultTable {
    std::vector<std::string> columns;  // first column is "sweep_value"
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Index of a named column; throws UsageError when absent.
    std::size_t column(std::string_view name) const;
    std::vector<double> series(std::string_view name) const;
};

/// fig2_capacity, fig4_interference, fig5_throughput_vs_tau, fig6_max_throughput, fig7_opt_tau.
const std::vector<std::string>& experiment_names();
std::string_view experiment_description(std::string_view name);

/// Parameters the experiment was built around: config, trial count and sweep.
ExperimentSpec default_spec(std::string_view name);
Sweep default_sweep(std::string_view name, const SystemConfig& config);

/// CR-to-PR interference-temperature slopes used by fig5 - fig7.
const std::vector<double>& experiment_gammas(std::string_view name);

/// Throws UsageError for an unknown experiment and ConfigError for invalid settings.
void validate(const ExperimentSpec& spec);

ResultTable run_experiment(const ExperimentSpec& spec);

/// `#`-prefixed metadata lines, then a header row and one row per sweep value.
void write_csv(const ResultTable& table, std::ostream& out);
std::string to_csv(const ResultTable& table);

}  // namespace cogbeam
