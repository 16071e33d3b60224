// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "cogbeam/airlink.hpp"
#include "cogbeam/beamforming.hpp"
#include "cogbeam/estimation.hpp"
#include "cogbeam/interference.hpp"
#include "cogbeam/tradeoff.hpp"

#ifndef COGBEAM_VERSION
#define COGBEAM_VERSION "0.0.0"
#endif

namespace cogbeam {

std::string_view to_string(Estimator e) {
    switch (e) {
        case Estimator::known_noise: return "known_noise";
        case Estimator::unknown_noise: return "unknown_noise";
        case Estimator::oracle: return "oracle";
    }
    return "unknown";
}

Estimator parse_estimator(std::string_view name) {
    if (name == "known_noise") return Estimator::known_noise;
    if (name == "unknown_noise") return Estimator::unknown_noise;
    if (name == "oracle") return Estimator::oracle;
    throw UsageError("unknown estimator '" + std::string(name) + "' (known_noise, unknown_noise, oracle)");
}

std::size_t ResultTable::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw UsageError("result table has no column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ResultTable::series(std::string_view name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

namespace {

enum class Aggregate { mean, median };

struct OutputColumn {
    std::string name;
    std::size_t raw;
    Aggregate agg;
};

// One trial fills out(sweep index, raw series index).
using TrialFn = std::function<void(const ExperimentSpec&, const std::vector<double>&, RngStream&, Eigen::MatrixXd&)>;

struct Plan {
    std::size_t raw_count = 0;
    std::vector<OutputColumn> columns;
    TrialFn trial;
};

struct ExperimentInfo {
    std::string_view name;
    std::string_view description;
    std::string_view sweep_parameter;
    int default_trials;
};

constexpr ExperimentInfo kExperiments[] = {
    {"fig2_capacity", "CR capacity vs CR SNR: null-space CB against the P-SVD baseline", "cr_snr_db", 500},
    {"fig4_interference", "normalized leakage at each PR vs learning length, with the upper bound", "n", 2000},
    {"fig5_throughput_vs_tau", "CR throughput vs learning time, true and estimated null space", "tau", 500},
    {"fig6_max_throughput", "maximum CR throughput vs CR SNR", "cr_snr_db", 500},
    {"fig7_opt_tau", "optimal learning time vs CR SNR", "cr_snr_db", 500},
};

const ExperimentInfo& info(std::string_view name) {
    for (const auto& e : kExperiments) {
        if (e.name == name) return e;
    }
    throw UsageError("unknown experiment '" + std::string(name) + "'; try `cogbeam list`");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> arange(double start, double stop, double step) {
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Channels, PR link and true null space for one trial.
struct Scenario {
    ChannelSet channels;
    PrLinkDesign design;
    EicEstimate truth;
};

Scenario draw_scenario(const SystemConfig& cfg, RngStream& rng) {
    RngStream channel_rng = rng.derive(0);
    Scenario s;
    s.channels = draw_channels(cfg, channel_rng);
    s.design = design_pr_link(cfg, s.channels.f, PrMode::eigenmode);
    const CMatrix q_s = true_signal_covariance(s.channels, s.design, cfg.alpha_1, cfg.alpha_2);
    s.truth = eic_from_true_covariance(q_s, cfg.rho_0);
    return s;
}

CMatrix learn_null_space(const SystemConfig& cfg, const Scenario& s, Estimator estimator, int n,
                         RngStream& rng) {
    if (estimator == Estimator::oracle) return s.truth.u_hat;
    const TddSchedule schedule = generate_tdd_schedule(n, cfg.alpha_1, cfg.alpha_2, 1, rng);
    const ObservationBatch batch = observe_pr_signals(s.channels, s.design, schedule, cfg.rho_0, rng);
    const CMatrix q = sample_covariance(batch);
    if (estimator == Estimator::known_noise) {
        return estimate_known_noise_with_rank(q, cfg.rho_0, s.truth.d_eff_hat).u_hat;
    }
    return estimate_unknown_noise(q, n).u_hat;
}

std::string gamma_label(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", g);
    return buf;
}

Plan plan_fig2() {
    Plan p;
    p.raw_count = 2;
    p.columns = {{"proposed", 0, Aggregate::mean}, {"psvd", 1, Aggregate::mean}};
    p.trial = [](const ExperimentSpec& spec, const std::vector<double>& sweep, RngStream& rng,
                 Eigen::MatrixXd& out) {
        const auto& cfg = spec.config;
        const Scenario s = draw_scenario(cfg, rng);
        // Perfect learning: the proposed scheme uses the true null space.
        const CMatrix& u = s.truth.u_hat;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const double budget = cfg.rho_1 * db_to_linear(sweep[i]);
            out(i, 0) = design_cb(u, s.channels.h, budget, cfg.rho_1).rate;
            out(i, 1) = psvd_capacity(s.channels.h, s.channels.g1, s.channels.g2, budget, cfg.rho_1);
        }
    };
    return p;
}

Plan plan_fig4() {
    Plan p;
    p.raw_count = 4;  // ibar_1, ibar_2, bound_1, bound_2
    p.columns = {
        {"ibar_1_median", 0, Aggregate::median}, {"bound_1_median", 2, Aggregate::median},
        {"ibar_2_median", 1, Aggregate::median}, {"bound_2_median", 3, Aggregate::median},
        {"ibar_1_mean", 0, Aggregate::mean},     {"bound_1_mean", 2, Aggregate::mean},
        {"ibar_2_mean", 1, Aggregate::mean},     {"bound_2_mean", 3, Aggregate::mean},
    };
    p.trial = [](const ExperimentSpec& spec, const std::vector<double>& sweep, RngStream& rng,
                 Eigen::MatrixXd& out) {
        const auto& cfg = spec.config;
        const Scenario s = draw_scenario(cfg, rng);
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const int n = static_cast<int>(sweep[i]);
            RngStream obs = rng.derive(1 + i);
            const CMatrix u = learn_null_space(cfg, s, spec.estimator, n, obs);
            const CbDesign cb = design_cb(u, s.channels.h, cfg.p_cr, cfg.rho_1);
            const LeakageReport r = leakage_metrics(s.design, s.channels, cb, cfg.rho_0,
                                                    LearningContext{cfg.alpha_1, cfg.alpha_2, n});
            out(i, 0) = r.i_bar_j[0];
            out(i, 1) = r.i_bar_j[1];
            out(i, 2) = r.bound_j[0].value();
            out(i, 3) = r.bound_j[1].value();
        }
    };
    return p;
}

Plan plan_fig5() {
    const auto& gammas = experiment_gammas("fig5_throughput_vs_tau");
    Plan p;
    p.raw_count = 2 * gammas.size();
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        p.columns.push_back({"theory_gamma_" + gamma_label(gammas[k]), 2 * k, Aggregate::mean});
        p.columns.push_back({"numeric_gamma_" + gamma_label(gammas[k]), 2 * k + 1, Aggregate::mean});
    }
    p.trial = [gammas](const ExperimentSpec& spec, const std::vector<double>& sweep, RngStream& rng,
                       Eigen::MatrixXd& out) {
        const auto& cfg = spec.config;
        const Scenario s = draw_scenario(cfg, rng);
        const WaterfillCurve<double> curve(effective_gains(s.channels.h, s.truth.u_hat), cfg.rho_1);
        const double t = cfg.t_block;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const double tau = sweep[i];
            const double keep = (t - tau) / t;
            RngStream obs = rng.derive(1 + i);
            const CMatrix u_hat = learn_null_space(cfg, s, spec.estimator, static_cast<int>(tau), obs);
            for (std::size_t k = 0; k < gammas.size(); ++k) {
                const double budget = std::min(cfg.p_cr, gammas[k] * tau);
                out(i, 2 * k) = keep * curve.value(budget);
                out(i, 2 * k + 1) = keep * design_cb(u_hat, s.channels.h, budget, cfg.rho_1).rate;
            }
        }
    };
    return p;
}

Plan plan_tradeoff_sweep(std::string_view name, bool report_tau) {
    const auto& gammas = experiment_gammas(name);
    Plan p;
    p.raw_count = gammas.size();
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        p.columns.push_back({(report_tau ? "opt_tau_gamma_" : "max_throughput_gamma_") + gamma_label(gammas[k]), k,
                             Aggregate::mean});
    }
    p.trial = [gammas, report_tau](const ExperimentSpec& spec, const std::vector<double>& sweep, RngStream& rng,
                                   Eigen::MatrixXd& out) {
        const auto& cfg = spec.config;
        const Scenario s = draw_scenario(cfg, rng);
        TradeoffProblem problem;
        problem.sigma_sq = effective_gains(s.channels.h, s.truth.u_hat);
        problem.rho_1 = cfg.rho_1;
        problem.t_block = cfg.t_block;
        problem.tau_min = cfg.tau_min;
        problem.constraint_mode = PowerConstraint::peak;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            problem.p_cr = cfg.rho_1 * db_to_linear(sweep[i]);
            for (std::size_t k = 0; k < gammas.size(); ++k) {
                problem.gamma = gammas[k];
                const TradeoffSolution sol = TradeoffSolver(problem).solve();
                out(i, k) = report_tau ? sol.tau_star : sol.value;
            }
        }
    };
    return p;
}

Plan make_plan(std::string_view name) {
    if (name == "fig2_capacity") return plan_fig2();
    if (name == "fig4_interference") return plan_fig4();
    if (name == "fig5_throughput_vs_tau") return plan_fig5();
    if (name == "fig6_max_throughput") return plan_tradeoff_sweep(name, false);
    if (name == "fig7_opt_tau") return plan_tradeoff_sweep(name, true);
    throw UsageError("unknown experiment '" + std::string(name) + "'");
}

double aggregate(std::vector<double> v, Aggregate agg) {
    if (agg == Aggregate::mean) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool is_whole(double v) { return std::floor(v) == v; }

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : kExperiments) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

std::string_view experiment_description(std::string_view name) { return info(name).description; }

const std::vector<double>& experiment_gammas(std::string_view name) {
    static const std::vector<double> fig5 = {0.2, 0.6};
    static const std::vector<double> sweep = {0.2, 0.6, 1.0};
    static const std::vector<double> none;
    const auto& e = info(name);
    if (e.name == "fig5_throughput_vs_tau") return fig5;
    if (e.name == "fig6_max_throughput" || e.name == "fig7_opt_tau") return sweep;
    return none;
}

Sweep default_sweep(std::string_view name, const SystemConfig& config) {
    const auto& e = info(name);
    Sweep s;
    s.parameter = std::string(e.sweep_parameter);
    if (e.name == "fig2_capacity") {
        s.values = arange(0.0, 50.0, 5.0);
    } else if (e.name == "fig4_interference") {
        s.values = {200, 400, 600, 800, 1000};
    } else if (e.name == "fig5_throughput_vs_tau") {
        const int step = std::max(1, config.t_block / 100);
        for (int tau = config.tau_min; tau < config.t_block; tau += step) s.values.push_back(tau);
    } else {
        s.values = arange(-10.0, 40.0, 2.5);
    }
    return s;
}

ExperimentSpec default_spec(std::string_view name) {
    const auto& e = info(name);
    ExperimentSpec spec;
    spec.name = std::string(e.name);
    spec.trials = e.default_trials;
    SystemConfig& c = spec.config;
    if (e.name == "fig2_capacity") {
        c.m_t = 5;
        c.m_r = 3;
        c.m_1 = c.m_2 = 2;
        c.d_1 = c.d_2 = 1;
    } else if (e.name == "fig4_interference") {
        c.m_t = 4;
        c.m_r = 3;
        c.m_1 = c.m_2 = 1;
        c.d_1 = c.d_2 = 1;
        c.alpha_1 = 0.3;
        c.alpha_2 = 0.6;
        c.p_1 = c.p_2 = std::pow(10.0, 1.5);
    }
    spec.sweep = default_sweep(name, c);
    return spec;
}

void validate(const ExperimentSpec& spec) {
    const auto& e = info(spec.name);
    validate(spec.config);
    if (spec.trials < 1) throw ConfigError("trials", "trials must be at least 1");
    if (spec.workers < 1) throw ConfigError("workers", "workers must be at least 1");
    if (!spec.trial_ids.empty() && spec.trial_ids.size() != static_cast<std::size_t>(spec.trials)) {
        throw ConfigError("trials", "trial_ids must hold one id per trial");
    }
    if (!spec.sweep.values.empty() && spec.sweep.parameter != e.sweep_parameter) {
        throw ConfigError("sweep", std::string(e.name) + " sweeps '" + std::string(e.sweep_parameter) + "'");
    }
    const auto& v = spec.sweep.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw ConfigError("sweep", "sweep values must be finite");
        if (i > 0 && !(v[i] > v[i - 1])) throw ConfigError("sweep", "sweep values must be strictly increasing");
    }
    const auto& cfg = spec.config;
    if (e.name == "fig4_interference") {
        if (!(cfg.alpha_1 > 0.0)) throw ConfigError("alpha_1", "the leakage bound needs alpha_1 > 0");
        if (!(cfg.alpha_2 > 0.0)) throw ConfigError("alpha_2", "the leakage bound needs alpha_2 > 0");
        for (double n : v) {
            if (!is_whole(n) || n < 2.0 || n > 1e8) throw ConfigError("sweep", "n must be a whole number >= 2");
        }
    }
    if (e.name == "fig5_throughput_vs_tau") {
        for (double tau : v) {
            if (!is_whole(tau) || tau < cfg.tau_min || tau >= cfg.t_block) {
                throw ConfigError("sweep", "tau must be a whole number in [tau_min, t_block)");
            }
        }
    }
}

ResultTable run_experiment(const ExperimentSpec& input) {
    ExperimentSpec spec = input;
    if (spec.sweep.values.empty()) spec.sweep = default_sweep(spec.name, spec.config);
    validate(spec);

    const Plan plan = make_plan(spec.name);
    const auto& sweep = spec.sweep.values;
    const auto trials = static_cast<std::size_t>(spec.trials);

    std::vector<std::uint64_t> ids = spec.trial_ids;
    if (ids.empty()) {
        ids.resize(trials);
        std::iota(ids.begin(), ids.end(), std::uint64_t{0});
    }
    // Aggregate in ascending trial-id order whatever order the ids were given in.
    std::sort(ids.begin(), ids.end());

    std::vector<Eigen::MatrixXd> results(trials);
    std::vector<std::exception_ptr> errors(trials);
    auto run_slot = [&](std::size_t slot) {
        try {
            RngStream rng(spec.seed, ids[slot]);
            Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sweep.size()),
                                                        static_cast<Eigen::Index>(plan.raw_count));
            plan.trial(spec, sweep, rng, out);
            results[slot] = std::move(out);
        } catch (...) {
            errors[slot] = std::current_exception();
        }
    };

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(spec.workers), trials);
    if (workers <= 1) {
        for (std::size_t i = 0; i < trials; ++i) run_slot(i);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < trials; i += workers) run_slot(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    ResultTable table;
    table.columns.push_back("sweep_value");
    for (const auto& c : plan.columns) table.columns.push_back(c.name);
    std::vector<double> cell(trials);
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        std::vector<double> row = {sweep[i]};
        for (const auto& c : plan.columns) {
            for (std::size_t t = 0; t < trials; ++t) {
                cell[t] = results[t](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c.raw));
            }
            const double v = aggregate(cell, c.agg);
            if (!std::isfinite(v)) {
                throw std::runtime_error(spec.name + ": non-finite result in column " + c.name + " at sweep value " +
                                         fmt(sweep[i]));
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }

    auto& md = table.metadata;
    md.emplace_back("experiment", spec.name);
    md.emplace_back("version", std::string("cogbeam ") + COGBEAM_VERSION);
    md.emplace_back("seed", std::to_string(spec.seed));
    md.emplace_back("trials", std::to_string(spec.trials));
    md.emplace_back("estimator", std::string(to_string(spec.estimator)));
    md.emplace_back("sweep", spec.sweep.parameter);
    std::istringstream cfg_lines(format_config(spec.config));
    for (std::string line; std::getline(cfg_lines, line);) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        md.emplace_back("config." + line.substr(0, eq), line.substr(eq + 3));
    }
    return table;
}

void write_csv(const ResultTable& table, std::ostream& out) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt(row[c]);
        out << '\n';
    }
}

std::string to_csv(const ResultTable& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

}  // namespace cogbeam
