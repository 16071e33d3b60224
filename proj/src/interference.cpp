// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/interference.hpp"

#include <cmath>

#include "cogbeam/numerics.hpp"

namespace cogbeam {

namespace {

double lambda_max_ggh(const CMatrix& g) {
    return hermitian_evd(hermitian_part(g * g.adjoint())).eigenvalues(0);
}

double lambda_min_aggha(const CMatrix& a, const CMatrix& g) {
    const CMatrix agh = a.adjoint() * g;
    const auto evd = hermitian_evd(hermitian_part(agh * agh.adjoint()));
    return evd.eigenvalues(evd.eigenvalues.size() - 1);
}

double eigen_ratio(const CMatrix& g, const CMatrix& a, const char* who) {
    if (a.rows() != g.rows()) {
        throw InvalidInput(std::string(who) + ": a_j and g_j dimensions disagree");
    }
    const double top = lambda_max_ggh(g);
    const double bottom = lambda_min_aggha(a, g);
    if (!(bottom > 1e-14 * top) || !(top > 0.0)) {
        throw InvalidInput(std::string(who) + ": a_j^H g_j must have full row rank");
    }
    return top / bottom;
}

}  // namespace

LeakageReport leakage_metrics(const PrLinkDesign& design, const ChannelSet& channels, const CbDesign& cb,
                              double rho_0, const std::optional<LearningContext>& learning) {
    if (!(rho_0 > 0.0)) {
        throw InvalidInput("leakage_metrics: rho_0 must be positive");
    }
    const std::array<const CMatrix*, 2> b = {&design.b1, &design.b2};
    const std::array<const CMatrix*, 2> g = {&channels.g1, &channels.g2};
    const std::array<const CMatrix*, 2> a = {&design.a1, &design.a2};

    LeakageReport out;
    for (std::size_t j = 0; j < 2; ++j) {
        if (cb.a_cr.cols() > 0) {
            out.i_j[j] = (*b[j] * *g[j] * cb.a_cr).squaredNorm();
        }
        out.i_bar_j[j] = out.i_j[j] / (rho_0 * b[j]->squaredNorm());
        if (learning) {
            const double alpha = j == 0 ? learning->alpha_1 : learning->alpha_2;
            if (alpha > 0.0) {
                out.bound_j[j] = leakage_bound(cb.power_used, alpha, learning->n, *g[j], *a[j]);
            }
        }
    }
    return out;
}

double leakage_bound(double c_cr_trace, double alpha_j, long long n, const CMatrix& g_j, const CMatrix& a_j) {
    if (!(alpha_j > 0.0)) {
        throw UndefinedBound("leakage_bound: PR is silent (alpha_j = 0)");
    }
    if (n < 1) {
        throw InvalidInput("leakage_bound: n must be at least 1");
    }
    if (!(c_cr_trace >= 0.0)) {
        throw InvalidInput("leakage_bound: CR power must be non-negative");
    }
    return c_cr_trace / (alpha_j * static_cast<double>(n)) * eigen_ratio(g_j, a_j, "leakage_bound");
}

double gamma_coefficient(double zeta_j, double alpha_j, double gamma_cap, double t_s, const CMatrix& g_j,
                         const CMatrix& a_j) {
    if (!(zeta_j > 0.0 && zeta_j <= 1.0)) {
        throw InvalidInput("gamma_coefficient: zeta_j must lie in (0, 1]");
    }
    if (!(gamma_cap > 0.0) || !(t_s > 0.0)) {
        throw InvalidInput("gamma_coefficient: Gamma and T_s must be positive");
    }
    if (!(alpha_j >= 0.0)) {
        throw InvalidInput("gamma_coefficient: alpha_j must be non-negative");
    }
    return zeta_j * alpha_j * gamma_cap / t_s / eigen_ratio(g_j, a_j, "gamma_coefficient");
}

CMatrix perturbation_predict(const CMatrix& y_signal, const CMatrix& z_noise, const CMatrix& u_true) {
    if (y_signal.rows() != z_noise.rows() || y_signal.cols() != z_noise.cols()) {
        throw InvalidInput("perturbation_predict: Y_s and Z must have the same shape");
    }
    if (u_true.rows() != y_signal.rows()) {
        throw InvalidInput("perturbation_predict: U must have m_t rows");
    }
    // (Y_s^H)^+ = (Y_s Y_s^H)^+ Y_s, which keeps the SVD at m_t x m_t.
    const CMatrix gram = hermitian_part(y_signal * y_signal.adjoint());
    const CMatrix zu = z_noise.adjoint() * u_true;
    return -(pseudo_inverse(gram) * (y_signal * zu));
}

CMatrix solve_coupling_matrix(const CMatrix& a_j, const CMatrix& b_j, const CMatrix& g_j) {
    if (a_j.rows() != g_j.rows() || b_j.cols() != g_j.rows()) {
        throw InvalidInput("solve_coupling_matrix: inconsistent dimensions");
    }
    const CMatrix x = a_j.adjoint() * g_j;
    const CMatrix y = b_j * g_j;
    const CMatrix w = y * pseudo_inverse(x);
    const double residual = (y - w * x).norm();
    if (residual > 1e-8 * y.norm()) {
        throw NoExactSolution("solve_coupling_matrix: B G is not spanned by A^H G", residual);
    }
    return w;
}

double coupling_trace_bound(const CMatrix& a_j, const CMatrix& b_j, const CMatrix& g_j) {
    return eigen_ratio(g_j, a_j, "coupling_trace_bound") * b_j.squaredNorm();
}

}  // namespace cogbeam
