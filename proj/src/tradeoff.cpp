// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/tradeoff.hpp"

#include <algorithm>
#include <cmath>

namespace cogbeam {

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::interior_g2: return "interior_g2";
        case Branch::corner_p_over_gamma: return "corner_p_over_gamma";
        case Branch::corner_tau_l: return "corner_tau_l";
        case Branch::always_g2: return "always_g2";
    }
    return "unknown";
}

namespace {

void check(const TradeoffProblem& p) {
    if (!(p.gamma > 0.0)) throw InvalidInput("tradeoff: gamma must be positive");
    if (!(p.t_block > 0.0)) throw InvalidInput("tradeoff: t_block must be positive");
    if (!(p.tau_min >= 0.0 && p.tau_min < p.t_block)) throw InvalidInput("tradeoff: need 0 <= tau_min < t_block");
    if (!(p.p_cr > 0.0)) throw InvalidInput("tradeoff: p_cr must be positive");
}

TradeoffProblem checked(TradeoffProblem p) {
    check(p);
    return p;
}

}  // namespace

TradeoffSolver::TradeoffSolver(TradeoffProblem problem)
    : problem_(checked(std::move(problem))), curve_(problem_.sigma_sq, problem_.rho_1) {}

double TradeoffSolver::eval_g(double tau, Objective which) const {
    const double t = problem_.t_block;
    if (!(tau >= 0.0 && tau < t)) {
        throw InvalidInput("eval_g: tau must lie in [0, t_block)");
    }
    const double keep = (t - tau) / t;
    switch (which) {
        case Objective::g1: return keep * curve_.value(problem_.p_cr);
        case Objective::g2: return keep * curve_.value(problem_.gamma * tau);
        case Objective::g3: return keep * curve_.value(t * problem_.p_cr / (t - tau));
    }
    return 0.0;
}

double TradeoffSolver::budget(double tau) const {
    const double t = problem_.t_block;
    const double interference = problem_.gamma * tau;
    const double power = problem_.constraint_mode == PowerConstraint::peak ? problem_.p_cr
                                                                            : t * problem_.p_cr / (t - tau);
    return std::min(power, interference);
}

double TradeoffSolver::objective(double tau) const {
    const double t = problem_.t_block;
    if (!(tau >= 0.0 && tau < t)) {
        throw InvalidInput("objective: tau must lie in [0, t_block)");
    }
    return (t - tau) / t * curve_.value(budget(tau));
}

// g2'(tau) = -f(gamma tau) / T + ((T - tau) / T) gamma f'(gamma tau), with f' = 1 / water level.
double TradeoffSolver::g2_slope(double tau) const {
    const double t = problem_.t_block;
    const double z = problem_.gamma * tau;
    return -curve_.value(z) / t + (t - tau) / t * problem_.gamma * curve_.derivative(z);
}

std::pair<double, double> TradeoffSolver::maximize_g2() const {
    const double t = problem_.t_block;
    double lo = problem_.tau_min;
    if (curve_.usable() == 0 || g2_slope(lo) <= 0.0) {
        return {lo, eval_g(lo, Objective::g2)};
    }
    // g2 is concave and its slope at T is -f(gamma T) / T < 0, so the root is interior.
    double hi = t;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * t; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (g2_slope(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double tau = std::min(0.5 * (lo + hi), std::nextafter(t, 0.0));
    return {tau, eval_g(tau, Objective::g2)};
}

TradeoffSolution TradeoffSolver::finish(double tau, Branch branch, Objective which) const {
    const double t = problem_.t_block;
    TradeoffSolution s;
    s.tau_star = tau;
    s.branch = branch;
    s.objective = which;
    s.value = eval_g(tau, which);
    switch (which) {
        case Objective::g1: s.budget = problem_.p_cr; break;
        case Objective::g2: s.budget = problem_.gamma * tau; break;
        case Objective::g3: s.budget = t * problem_.p_cr / (t - tau); break;
    }
    s.allocation = curve_.solve(s.budget).allocation;
    const double rounded = std::max(std::round(tau), std::ceil(problem_.tau_min));
    s.tau_star_symbols = static_cast<int>(std::min(rounded, std::ceil(t) - 1.0));
    return s;
}

TradeoffSolution TradeoffSolver::solve_peak() const {
    const auto& p = problem_;
    const double tau2 = maximize_g2().first;
    const double corner = p.p_cr / p.gamma;
    if (corner >= p.t_block) {
        return finish(tau2, Branch::always_g2, Objective::g2);
    }
    if (tau2 < corner) {
        return finish(tau2, Branch::interior_g2, Objective::g2);
    }
    return finish(std::max(corner, p.tau_min), Branch::corner_p_over_gamma, Objective::g1);
}

TradeoffSolution TradeoffSolver::solve_average() const {
    const auto& p = problem_;
    const double tau2 = maximize_g2().first;
    const auto roots = average_roots(p.p_cr, p.gamma, p.t_block);
    if (!roots || roots->second <= p.tau_min) {
        return finish(tau2, Branch::always_g2, Objective::g2);
    }
    const auto [tau_l, tau_u] = *roots;
    if (tau2 < tau_l) {
        return finish(tau2, Branch::interior_g2, Objective::g2);
    }
    return finish(std::max(tau_l, p.tau_min), Branch::corner_tau_l, Objective::g3);
}

TradeoffSolution TradeoffSolver::solve() const {
    return problem_.constraint_mode == PowerConstraint::peak ? solve_peak() : solve_average();
}

std::optional<std::pair<double, double>> average_roots(double p_cr, double gamma, double t_block) {
    if (!(p_cr > 0.0) || !(gamma > 0.0) || !(t_block > 0.0)) {
        throw InvalidInput("average_roots: inputs must be positive");
    }
    // gamma tau^2 - gamma T tau + T P = 0
    if (p_cr / gamma >= t_block / 4.0) {
        return std::nullopt;
    }
    const double disc = gamma * t_block * (gamma * t_block - 4.0 * p_cr);
    const double q = 0.5 * (gamma * t_block + std::sqrt(disc));
    const double tau_u = q / gamma;
    const double tau_l = t_block * p_cr / q;
    return std::make_pair(tau_l, tau_u);
}

double eval_g(const TradeoffProblem& problem, double tau, Objective which) {
    return TradeoffSolver(problem).eval_g(tau, which);
}

std::pair<double, double> maximize_g2(const TradeoffProblem& problem) {
    return TradeoffSolver(problem).maximize_g2();
}

TradeoffSolution solve_peak(const TradeoffProblem& problem) { return TradeoffSolver(problem).solve_peak(); }

TradeoffSolution solve_average(const TradeoffProblem& problem) { return TradeoffSolver(problem).solve_average(); }

}  // namespace cogbeam
