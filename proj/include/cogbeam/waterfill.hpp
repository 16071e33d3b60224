// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "cogbeam/types.hpp"

namespace cogbeam {

template <typename Real>
struct WaterfillSolution {
    Real value = 0;                  // f(z), nats
    std::vector<Real> allocation;    // x_i >= 0, same length as the gain vector
    Real water_level = 0;            // 1 / mu
    int active_count = 0;            // number of x_i > 0
};

/// The water-filling value function
///     f(z) = max sum_i log(1 + g_i x_i / rho)  s.t.  sum_i x_i <= z, x_i >= 0
/// for gains g_i sorted descending, in closed piecewise-log form. Segment k (k active
/// dimensions) covers z in [q_{k-1}, q_k] with
///     q_k = k rho / g_{k+1} - sum_{i<=k} rho / g_i,   q_0 = 0,  q_K = +inf,
/// where K counts the strictly positive gains; zero gains never receive power.
template <typename Real>
class WaterfillCurve {
public:
    WaterfillCurve(const std::vector<Real>& gains, Real rho) : size_(gains.size()) {
        if (!(rho > Real(0))) {
            throw InvalidInput("waterfill: noise power must be positive");
        }
        for (std::size_t i = 0; i < gains.size(); ++i) {
            if (!(gains[i] >= Real(0))) {
                throw InvalidInput("waterfill: gains must be non-negative");
            }
            if (i > 0 && gains[i] > gains[i - 1]) {
                throw InvalidInput("waterfill: gains must be sorted in descending order");
            }
        }
        Real prefix = 0;
        for (const Real g : gains) {
            if (g <= Real(0)) {
                break;
            }
            inv_.push_back(rho / g);
            prefix += rho / g;
            prefix_.push_back(prefix);
        }
        const std::size_t active = inv_.size();
        for (std::size_t k = 1; k < active; ++k) {
            breakpoints_.push_back(static_cast<Real>(k) * inv_[k] - prefix_[k - 1]);
        }
        breakpoints_.push_back(std::numeric_limits<Real>::infinity());
    }

    /// Number of dimensions with strictly positive gain.
    std::size_t usable() const { return inv_.size(); }

    /// q_1 .. q_K (the last is +inf); empty when no gain is positive.
    const std::vector<Real>& breakpoints() const { return breakpoints_; }

    /// Segment index k >= 1 containing z; ties z = q_k resolve to the smaller k.
    std::size_t segment(Real z) const {
        std::size_t k = 1;
        while (k < inv_.size() && z > breakpoints_[k - 1]) {
            ++k;
        }
        return k;
    }

    Real water_level(Real z) const {
        if (inv_.empty()) {
            return 0;
        }
        const std::size_t k = segment(z);
        return (z + prefix_[k - 1]) / static_cast<Real>(k);
    }

    Real value(Real z) const {
        if (inv_.empty()) {
            return 0;
        }
        return segment_value(z, segment(z));
    }

    /// Closed form of segment k (k active dimensions) evaluated at z, whether or not z lies
    /// in that segment. Comparing neighbours at q_k measures the jump there.
    Real segment_value(Real z, std::size_t k) const {
        if (k < 1 || k > inv_.size()) {
            throw InvalidInput("waterfill: segment index out of range");
        }
        const Real level = (z + prefix_[k - 1]) / static_cast<Real>(k);
        Real sum = 0;
        for (std::size_t i = 0; i < k; ++i) {
            sum += std::log(level / inv_[i]);
        }
        return sum;
    }

    /// f'(z) = mu = 1 / water level.
    Real derivative(Real z) const {
        if (inv_.empty()) {
            return 0;
        }
        return Real(1) / water_level(z);
    }

    WaterfillSolution<Real> solve(Real z) const {
        if (!(z >= Real(0))) {
            throw InvalidInput("waterfill: budget must be non-negative");
        }
        WaterfillSolution<Real> out;
        if (inv_.empty()) {
            return out;
        }
        const std::size_t k = segment(z);
        const Real level = (z + prefix_[k - 1]) / static_cast<Real>(k);
        out.water_level = level;
        out.allocation.assign(size_, Real(0));
        for (std::size_t i = 0; i < k; ++i) {
            out.allocation[i] = std::max(level - inv_[i], Real(0));
            if (out.allocation[i] > Real(0)) {
                ++out.active_count;
            }
            out.value += std::log(level / inv_[i]);
        }
        return out;
    }

private:
    std::size_t size_;
    std::vector<Real> inv_;     // rho / g_i over positive gains
    std::vector<Real> prefix_;  // running sums of inv_
    std::vector<Real> breakpoints_;
};

template <typename Real>
WaterfillSolution<Real> waterfill(const std::vector<Real>& gains, Real rho, Real z) {
    return WaterfillCurve<Real>(gains, rho).solve(z);
}

}  // namespace cogbeam
