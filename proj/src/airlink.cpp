// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/airlink.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cogbeam/numerics.hpp"

namespace cogbeam {

int TddSchedule::count1() const { return std::accumulate(q1.begin(), q1.end(), 0); }
int TddSchedule::count2() const { return std::accumulate(q2.begin(), q2.end(), 0); }

TddSchedule generate_tdd_schedule(int n, double alpha_1, double alpha_2, int block_len, RngStream& rng) {
    if (!(alpha_1 >= 0.0) || !(alpha_2 >= 0.0)) {
        throw ConfigError("alpha", "activity probabilities must be non-negative");
    }
    if (alpha_1 + alpha_2 > 1.0 + 1e-12) {
        throw ConfigError("alpha", "alpha_1 + alpha_2 must not exceed 1");
    }
    if (n < 0 || block_len < 1) {
        throw InvalidInput("generate_tdd_schedule: n >= 0 and block_len >= 1 required");
    }
    const bool never_idle = alpha_1 + alpha_2 >= 1.0;

    TddSchedule s;
    s.n = n;
    s.q1.assign(static_cast<std::size_t>(n), 0);
    s.q2.assign(static_cast<std::size_t>(n), 0);
    for (int start = 0; start < n; start += block_len) {
        const double u = rng.uniform();
        const int end = std::min(n, start + block_len);
        std::vector<std::uint8_t>* target = nullptr;
        if (u < alpha_1) {
            target = &s.q1;
        } else if (u < alpha_1 + alpha_2 || (never_idle && alpha_2 > 0.0)) {
            target = &s.q2;
        }
        if (target != nullptr) {
            std::fill(target->begin() + start, target->begin() + end, std::uint8_t{1});
        }
    }
    return s;
}

ObservationBatch observe_pr_signals(const ChannelSet& channels, const PrLinkDesign& design,
                                    const TddSchedule& schedule, double rho_0, RngStream& rng) {
    if (channels.g1.rows() != design.a1.rows() || channels.g2.rows() != design.a2.rows()) {
        throw InvalidInput("observe_pr_signals: channel and beamformer dimensions disagree");
    }
    if (!(rho_0 >= 0.0)) {
        throw InvalidInput("observe_pr_signals: rho_0 must be non-negative");
    }
    const Eigen::Index m_t = channels.g1.cols();
    const Eigen::Index n = schedule.n;
    const CMatrix eff1 = channels.g1.adjoint() * design.a1;
    const CMatrix eff2 = channels.g2.adjoint() * design.a2;
    const double noise_amp = std::sqrt(rho_0);

    ObservationBatch out;
    out.schedule = schedule;
    out.rho_0 = rho_0;
    out.signal_only = CMatrix::Zero(m_t, n);
    out.y.resize(m_t, n);

    Eigen::VectorXcd t1(eff1.cols());
    Eigen::VectorXcd t2(eff2.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (schedule.q1[idx] != 0) {
            for (Eigen::Index k = 0; k < t1.size(); ++k) t1(k) = rng.cscg();
            out.signal_only.col(i).noalias() = eff1 * t1;
        } else if (schedule.q2[idx] != 0) {
            for (Eigen::Index k = 0; k < t2.size(); ++k) t2(k) = rng.cscg();
            out.signal_only.col(i).noalias() = eff2 * t2;
        }
        for (Eigen::Index r = 0; r < m_t; ++r) {
            out.y(r, i) = out.signal_only(r, i) + noise_amp * rng.cscg();
        }
    }
    return out;
}

CMatrix true_signal_covariance(const ChannelSet& channels, const PrLinkDesign& design, double alpha_1,
                               double alpha_2) {
    if (channels.g1.rows() != design.s1.rows() || channels.g2.rows() != design.s2.rows()) {
        throw InvalidInput("true_signal_covariance: channel and covariance dimensions disagree");
    }
    const CMatrix q = alpha_1 * (channels.g1.adjoint() * design.s1 * channels.g1) +
                      alpha_2 * (channels.g2.adjoint() * design.s2 * channels.g2);
    return hermitian_part(q);
}

}  // namespace cogbeam
