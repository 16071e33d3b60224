// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cogbeam/types.hpp"
#include "cogbeam/waterfill.hpp"

namespace cogbeam {

enum class PowerConstraint { peak, average };

/// Learning-throughput problem: choose the learning time tau in [tau_min, T) to maximize
/// ((T - tau) / T) f(J(tau)), where f is the water-filling value over sigma_sq and
///   peak:    J = min(P_CR, gamma tau)
///   average: J = min(T P_CR / (T - tau), gamma tau).
struct TradeoffProblem {
    std::vector<double> sigma_sq;  // descending
    double rho_1 = 1.0;
    double t_block = 1000.0;
    double tau_min = 10.0;
    double p_cr = 100.0;
    double gamma = 1.0;            // min(gamma_1, gamma_2)
    PowerConstraint constraint_mode = PowerConstraint::peak;
};

enum class Branch { interior_g2, corner_p_over_gamma, corner_tau_l, always_g2 };
enum class Objective { g1, g2, g3 };

std::string_view to_string(Branch b);

struct TradeoffSolution {
    double tau_star = 0.0;        // continuous optimum
    int tau_star_symbols = 0;     // rounded to a whole symbol count >= tau_min
    double value = 0.0;           // nats per complex dimension
    Branch branch = Branch::always_g2;
    Objective objective = Objective::g2;  // curve that value lies on
    double budget = 0.0;          // J(tau_star)
    std::vector<double> allocation;
};

/// Precomputes the water-filling curve once so repeated evaluations are cheap.
class TradeoffSolver {
public:
    explicit TradeoffSolver(TradeoffProblem problem);

    const TradeoffProblem& problem() const { return problem_; }
    const WaterfillCurve<double>& curve() const { return curve_; }

    /// g1 = ((T - tau)/T) f(P_CR); g2 = ((T - tau)/T) f(gamma tau);
    /// g3 = ((T - tau)/T) f(T P_CR / (T - tau)). Requires 0 <= tau < T.
    double eval_g(double tau, Objective which) const;

    /// Objective with the power budget J(tau) of the configured constraint mode.
    double objective(double tau) const;
    double budget(double tau) const;

    /// Maximizer of g2 over [tau_min, T) and its value.
    std::pair<double, double> maximize_g2() const;

    TradeoffSolution solve_peak() const;
    TradeoffSolution solve_average() const;
    TradeoffSolution solve() const;

private:
    double g2_slope(double tau) const;
    TradeoffSolution finish(double tau, Branch branch, Objective objective) const;

    TradeoffProblem problem_;
    WaterfillCurve<double> curve_;
};

/// Roots tau_l < tau_u of gamma tau (T - tau) = T P_CR, or nothing when P_CR / gamma >= T / 4.
std::optional<std::pair<double, double>> average_roots(double p_cr, double gamma, double t_block);

double eval_g(const TradeoffProblem& problem, double tau, Objective which);
std::pair<double, double> maximize_g2(const TradeoffProblem& problem);
TradeoffSolution solve_peak(const TradeoffProblem& problem);
TradeoffSolution solve_average(const TradeoffProblem& problem);

}  // namespace cogbeam
