// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>

#include "cogbeam/beamforming.hpp"
#include "cogbeam/scenario.hpp"
#include "cogbeam/types.hpp"

namespace cogbeam {

/// Leakage at the two PR terminals, index 0 for PR1 and 1 for PR2.
struct LeakageReport {
    std::array<double, 2> i_j{};      // raw leakage power
    std::array<double, 2> i_bar_j{};  // leakage over processed noise rho_0 tr(B_j B_j^H)
    std::array<std::optional<double>, 2> bound_j;  // upper bound; empty when alpha_j = 0
};

/// Learning-phase context needed for the leakage upper bound.
struct LearningContext {
    double alpha_1 = 0.0;
    double alpha_2 = 0.0;
    long long n = 0;  // observed symbols
};

/// Exact leakage tr(B_j G_j S_CR G_j^H B_j^H) with S_CR = a_cr a_cr^H; bounds are filled
/// when a learning context is supplied.
LeakageReport leakage_metrics(const PrLinkDesign& design, const ChannelSet& channels, const CbDesign& cb,
                              double rho_0, const std::optional<LearningContext>& learning = std::nullopt);

/// tr(C_CR) / (alpha_j n) * lambda_max(G G^H) / lambda_min(A^H G G^H A).
double leakage_bound(double c_cr_trace, double alpha_j, long long n, const CMatrix& g_j, const CMatrix& a_j);

/// gamma_j = (zeta_j alpha_j Gamma / T_s) * lambda_min(A^H G G^H A) / lambda_max(G G^H), so
/// tr(C_CR) <= gamma_j tau keeps the bound at zeta_j * Gamma.
double gamma_coefficient(double zeta_j, double alpha_j, double gamma_cap, double t_s, const CMatrix& g_j,
                         const CMatrix& a_j);

/// First-order perturbation of the noise subspace, -(Y_s^H)^+ Z^H U.
CMatrix perturbation_predict(const CMatrix& y_signal, const CMatrix& z_noise, const CMatrix& u_true);

/// W with B G = W A^H G (least squares). Throws NoExactSolution when the residual
/// exceeds 1e-8 ||B G||_F.
CMatrix solve_coupling_matrix(const CMatrix& a_j, const CMatrix& b_j, const CMatrix& g_j);

/// lambda_max(G G^H) tr(B B^H) / lambda_min(A^H G G^H A), the ceiling on tr(W W^H).
double coupling_trace_bound(const CMatrix& a_j, const CMatrix& b_j, const CMatrix& g_j);

}  // namespace cogbeam
