// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cogbeam/types.hpp"
#include "cogbeam/waterfill.hpp"

namespace cogbeam {

/// CR transmit design confined to span(u_basis): a_cr = u_basis * c_cr^{1/2}.
struct CbDesign {
    CMatrix u_basis;          // m_t x k orthonormal columns
    CMatrix c_cr;             // k x k covariance on the reduced space
    CMatrix a_cr;             // m_t x d_cr transmit beamformer
    int d_cr = 0;
    double power_used = 0.0;  // trace(c_cr)
    double rate = 0.0;        // log det(I + H U C U^H H^H / rho_1), nats
    std::vector<double> gains;  // eigenvalues of U^H H^H H U, descending
};

/// Eigenvalues of u^H h^H h u, descending, with values below 1e-12 of the largest set to 0.
std::vector<double> effective_gains(const CMatrix& h, const CMatrix& u_basis);

/// Water-filling over the eigenmodes of h * u_basis with total power `budget`.
CbDesign design_cb(const CMatrix& u_basis, const CMatrix& h, double budget, double rho_1);

/// log det(I + m) for Hermitian PSD m, natural log.
double log_det_identity_plus(const CMatrix& m);

/// (1 - learning_fraction) * log det(I + h u c u^H h^H / rho_1), nats per complex dimension.
double throughput(const CMatrix& h, const CMatrix& u_basis, const CMatrix& c_cr, double rho_1,
                  double learning_fraction);

/// Orthonormal basis of the null space of g (columns orthogonal to every row of g);
/// rank cutoff rel_tol * sigma_max.
CMatrix null_space_basis(const CMatrix& g, Eigen::Index cols, double rel_tol = 1e-9);

/// Projected-channel SVD baseline: water-filling capacity of h restricted to the
/// orthogonal complement of the row spaces of g1 and g2. Either g may have zero rows.
double psvd_capacity(const CMatrix& h, const CMatrix& g1, const CMatrix& g2, double budget, double rho_1);

/// Plain MIMO water-filling capacity of h.
double mimo_capacity(const CMatrix& h, double budget, double rho_1);

/// min((m_t - a - b)^+, m_r).
int dof(int m_t, int m_r, int a, int b);

}  // namespace cogbeam
