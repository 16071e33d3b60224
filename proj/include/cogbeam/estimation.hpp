// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cogbeam/airlink.hpp"
#include "cogbeam/types.hpp"

namespace cogbeam {

/// Estimated effective interference channel (EIC) and the subspaces derived from it.
struct EicEstimate {
    CMatrix q_s_hat;       // PSD estimate of the PR signal covariance
    int d_eff_hat = 0;     // rank estimate
    CMatrix v_hat;         // m_t x d_eff_hat signal subspace
    CMatrix u_hat;         // m_t x (m_t - d_eff_hat) null space used for CR transmission
    double rho_0_hat = 0;  // noise power (the supplied value on the known-noise path)
    CMatrix g_eff;         // d_eff_hat x m_t, the conjugate transpose of Q_s_hat^{1/2}
    RVector eigenvalues;   // eigenvalues of the input covariance, descending
    bool degenerate = false;  // d_eff_hat == m_t: no null space left
};

/// (1/n) sum y y^H over the columns of y.
CMatrix sample_covariance(const CMatrix& y);
CMatrix sample_covariance(const ObservationBatch& batch);

/// Known noise power: soft-threshold the eigenvalues at rho_0; rank is the number of
/// eigenvalues strictly above rho_0.
EicEstimate estimate_known_noise(const CMatrix& q_y_hat, double rho_0);

/// Same shrinkage as estimate_known_noise but with the rank supplied by the caller, for
/// experiments that take the rank as correctly detected.
EicEstimate estimate_known_noise_with_rank(const CMatrix& q_y_hat, double rho_0, int rank);

/// Minimum description length rank estimate over k = 0 .. m-1.
int estimate_rank_mdl(const RVector& eigenvalues, long long n);

/// Unknown noise power: MDL rank, noise power as the mean of the trailing eigenvalues.
EicEstimate estimate_unknown_noise(const CMatrix& q_y_hat, long long n);

/// Perfect learning: subspaces of the true Q_s, rank by singular-value cutoff.
EicEstimate eic_from_true_covariance(const CMatrix& q_s, double rho_0);

}  // namespace cogbeam
