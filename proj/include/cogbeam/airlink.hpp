// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cogbeam/rng.hpp"
#include "cogbeam/scenario.hpp"
#include "cogbeam/types.hpp"

namespace cogbeam {

/// PR TDD activity over n symbols. q1[i] = 1 when PR1 transmits, q2[i] = 1 when PR2
/// transmits; never both.
struct TddSchedule {
    int n = 0;
    std::vector<std::uint8_t> q1;
    std::vector<std::uint8_t> q2;

    int count1() const;
    int count2() const;
};

/// What CR-Tx hears while learning: y = signal_only + noise.
struct ObservationBatch {
    CMatrix y;            // m_t x n
    TddSchedule schedule;
    double rho_0 = 0.0;
    // Noiseless component. Diagnostics only; estimators must read y.
    CMatrix signal_only;  // m_t x n

    CMatrix noise() const { return y - signal_only; }
};

/// Runs of block_len symbols, each drawn from {PR1: alpha_1, PR2: alpha_2, idle: rest}.
/// block_len = 1 gives per-symbol i.i.d. activity.
TddSchedule generate_tdd_schedule(int n, double alpha_1, double alpha_2, int block_len, RngStream& rng);

/// Column i is g_j^H a_j t_j(i) for the active PR_j (zero when idle) plus CN(0, rho_0 I)
/// noise, with t_j(i) ~ CN(0, I).
ObservationBatch observe_pr_signals(const ChannelSet& channels, const PrLinkDesign& design,
                                    const TddSchedule& schedule, double rho_0, RngStream& rng);

/// alpha_1 g1^H s1 g1 + alpha_2 g2^H s2 g2.
CMatrix true_signal_covariance(const ChannelSet& channels, const PrLinkDesign& design, double alpha_1,
                               double alpha_2);

}  // namespace cogbeam
