// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/beamforming.hpp"

#include <algorithm>
#include <cmath>

#include "cogbeam/numerics.hpp"

namespace cogbeam {

namespace {

struct ReducedEvd {
    CMatrix vectors;
    std::vector<double> gains;
};

ReducedEvd reduced_evd(const CMatrix& h, const CMatrix& u_basis) {
    const CMatrix hu = h * u_basis;
    const auto evd = hermitian_evd(hermitian_part(hu.adjoint() * hu));
    ReducedEvd out;
    out.vectors = evd.eigenvectors;
    out.gains.resize(static_cast<std::size_t>(evd.eigenvalues.size()));
    const double top = std::max(evd.eigenvalues(0), 0.0);
    for (Eigen::Index i = 0; i < evd.eigenvalues.size(); ++i) {
        const double g = evd.eigenvalues(i);
        out.gains[static_cast<std::size_t>(i)] = g > 1e-12 * top ? g : 0.0;
    }
    return out;
}

}  // namespace

std::vector<double> effective_gains(const CMatrix& h, const CMatrix& u_basis) {
    if (u_basis.cols() == 0) {
        return {};
    }
    return reduced_evd(h, u_basis).gains;
}

CbDesign design_cb(const CMatrix& u_basis, const CMatrix& h, double budget, double rho_1) {
    if (h.cols() != u_basis.rows()) {
        throw InvalidInput("design_cb: h and u_basis dimensions disagree");
    }
    if (!(budget >= 0.0)) {
        throw InvalidInput("design_cb: budget must be non-negative");
    }
    const Eigen::Index k = u_basis.cols();
    CbDesign d;
    d.u_basis = u_basis;
    d.c_cr = CMatrix::Zero(k, k);
    d.a_cr = CMatrix::Zero(u_basis.rows(), 0);
    if (k == 0) {
        return d;
    }

    const auto evd = reduced_evd(h, u_basis);
    const auto wf = waterfill(evd.gains, rho_1, budget);
    d.gains = evd.gains;
    if (wf.allocation.empty()) {
        return d;
    }

    RVector x(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        x(i) = wf.allocation[static_cast<std::size_t>(i)];
    }
    d.c_cr = hermitian_part(evd.vectors * x.asDiagonal() * evd.vectors.adjoint());
    d.d_cr = wf.active_count;
    // Allocations are nonzero on a leading prefix of the sorted gains.
    d.a_cr = u_basis * evd.vectors.leftCols(d.d_cr) * x.head(d.d_cr).cwiseSqrt().asDiagonal();
    d.power_used = x.sum();
    d.rate = wf.value;
    return d;
}

double log_det_identity_plus(const CMatrix& m) {
    const CMatrix a = CMatrix::Identity(m.rows(), m.cols()) + hermitian_part(m);
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw InvalidInput("log_det_identity_plus: I + M is not positive definite");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        sum += std::log(std::real(llt.matrixLLT()(i, i)));
    }
    return 2.0 * sum;
}

double throughput(const CMatrix& h, const CMatrix& u_basis, const CMatrix& c_cr, double rho_1,
                  double learning_fraction) {
    if (!(learning_fraction >= 0.0 && learning_fraction < 1.0)) {
        throw InvalidInput("throughput: learning fraction must lie in [0, 1)");
    }
    if (!(rho_1 > 0.0)) {
        throw InvalidInput("throughput: rho_1 must be positive");
    }
    if (u_basis.cols() == 0) {
        return 0.0;
    }
    const CMatrix hu = h * u_basis;
    return (1.0 - learning_fraction) * log_det_identity_plus(hu * c_cr * hu.adjoint() / rho_1);
}

CMatrix null_space_basis(const CMatrix& g, Eigen::Index cols, double rel_tol) {
    if (g.rows() == 0) {
        return CMatrix::Identity(cols, cols);
    }
    if (g.cols() != cols) {
        throw InvalidInput("null_space_basis: column count mismatch");
    }
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullV);
    const auto rank = numerical_rank(g, rel_tol);
    return svd.matrixV().rightCols(cols - rank);
}

double psvd_capacity(const CMatrix& h, const CMatrix& g1, const CMatrix& g2, double budget, double rho_1) {
    const Eigen::Index m_t = h.cols();
    if ((g1.rows() > 0 && g1.cols() != m_t) || (g2.rows() > 0 && g2.cols() != m_t)) {
        throw InvalidInput("psvd_capacity: interference channels must have m_t columns");
    }
    CMatrix stacked(g1.rows() + g2.rows(), m_t);
    if (g1.rows() > 0) stacked.topRows(g1.rows()) = g1;
    if (g2.rows() > 0) stacked.bottomRows(g2.rows()) = g2;
    return design_cb(null_space_basis(stacked, m_t), h, budget, rho_1).rate;
}

double mimo_capacity(const CMatrix& h, double budget, double rho_1) {
    return design_cb(CMatrix::Identity(h.cols(), h.cols()), h, budget, rho_1).rate;
}

int dof(int m_t, int m_r, int a, int b) {
    if (m_t < 0 || m_r < 0 || a < 0 || b < 0) {
        throw InvalidInput("dof: arguments must be non-negative");
    }
    return std::min(std::max(m_t - a - b, 0), m_r);
}

}  // namespace cogbeam
