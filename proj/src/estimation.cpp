// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cogbeam/numerics.hpp"

namespace cogbeam {

CMatrix sample_covariance(const CMatrix& y) {
    if (y.cols() == 0) {
        throw InvalidInput("sample_covariance: no samples");
    }
    CMatrix q = CMatrix::Zero(y.rows(), y.rows());
    q.selfadjointView<Eigen::Lower>().rankUpdate(y, 1.0 / static_cast<double>(y.cols()));
    q = q.selfadjointView<Eigen::Lower>();
    return q;
}

CMatrix sample_covariance(const ObservationBatch& batch) { return sample_covariance(batch.y); }

namespace {

// Q_s_hat = V diag(shrunk) V^H over the leading `rank` eigenpairs.
EicEstimate assemble(const EvdResult<double>& evd, int rank, double floor, double rho_0_hat) {
    const Eigen::Index m = evd.eigenvalues.size();
    EicEstimate est;
    est.d_eff_hat = rank;
    est.rho_0_hat = rho_0_hat;
    est.eigenvalues = evd.eigenvalues;
    est.v_hat = evd.eigenvectors.leftCols(rank);
    est.u_hat = evd.eigenvectors.rightCols(m - rank);
    est.degenerate = rank == m;

    RVector shrunk(rank);
    for (int i = 0; i < rank; ++i) {
        shrunk(i) = std::max(evd.eigenvalues(i) - floor, 0.0);
    }
    est.q_s_hat = hermitian_part(est.v_hat * shrunk.asDiagonal() * est.v_hat.adjoint());
    est.g_eff = shrunk.cwiseSqrt().asDiagonal() * est.v_hat.adjoint();
    return est;
}

}  // namespace

EicEstimate estimate_known_noise(const CMatrix& q_y_hat, double rho_0) {
    if (!(rho_0 >= 0.0)) {
        throw InvalidInput("estimate_known_noise: rho_0 must be non-negative");
    }
    const auto evd = hermitian_evd(q_y_hat);
    int rank = 0;
    while (rank < evd.eigenvalues.size() && evd.eigenvalues(rank) > rho_0) {
        ++rank;
    }
    return assemble(evd, rank, rho_0, rho_0);
}

EicEstimate estimate_known_noise_with_rank(const CMatrix& q_y_hat, double rho_0, int rank) {
    if (!(rho_0 >= 0.0)) {
        throw InvalidInput("estimate_known_noise_with_rank: rho_0 must be non-negative");
    }
    if (rank < 0 || rank > q_y_hat.rows()) {
        throw InvalidInput("estimate_known_noise_with_rank: rank out of range");
    }
    return assemble(hermitian_evd(q_y_hat), rank, rho_0, rho_0);
}

int estimate_rank_mdl(const RVector& eigenvalues, long long n) {
    const Eigen::Index m = eigenvalues.size();
    if (m < 2) {
        throw InvalidInput("estimate_rank_mdl: need at least two eigenvalues");
    }
    if (n < 2) {
        throw InvalidInput("estimate_rank_mdl: need at least two samples");
    }
    std::vector<double> lambda(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        lambda[static_cast<std::size_t>(i)] = std::max(eigenvalues(i), 1e-300);
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());

    const double samples = static_cast<double>(n);
    const double log_n = std::log(samples);
    int best_k = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto tail = static_cast<double>(m - k);
        double sum = 0.0;
        double log_sum = 0.0;
        for (auto i = static_cast<std::size_t>(k); i < lambda.size(); ++i) {
            sum += lambda[i];
            log_sum += std::log(lambda[i]);
        }
        // log(AM / GM) >= 0; rounding can push equal eigenvalues slightly negative.
        const double log_am_over_gm = std::max(std::log(sum / tail) - log_sum / tail, 0.0);
        const double kk = static_cast<double>(k);
        const double score = tail * samples * log_am_over_gm + 0.5 * kk * (2.0 * static_cast<double>(m) - kk) * log_n;
        if (score < best_score) {
            best_score = score;
            best_k = static_cast<int>(k);
        }
    }
    return best_k;
}

EicEstimate estimate_unknown_noise(const CMatrix& q_y_hat, long long n) {
    const auto evd = hermitian_evd(q_y_hat);
    const int rank = estimate_rank_mdl(evd.eigenvalues, n);
    const Eigen::Index m = evd.eigenvalues.size();
    double rho_0_hat = 0.0;
    if (rank < m) {
        rho_0_hat = evd.eigenvalues.tail(m - rank).mean();
    }
    return assemble(evd, rank, rho_0_hat, rho_0_hat);
}

EicEstimate eic_from_true_covariance(const CMatrix& q_s, double rho_0) {
    const auto evd = hermitian_evd(q_s);
    const double top = std::max(evd.eigenvalues(0), 0.0);
    int rank = 0;
    while (rank < evd.eigenvalues.size() && evd.eigenvalues(rank) > 1e-10 * top && evd.eigenvalues(rank) > 0.0) {
        ++rank;
    }
    EicEstimate est = assemble(evd, rank, 0.0, rho_0);
    est.q_s_hat = q_s;
    return est;
}

}  // namespace cogbeam
