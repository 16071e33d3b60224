// SPDX-License-Identifier: Apache-2.0
#include "cogbeam/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cogbeam/numerics.hpp"

namespace cogbeam {

CMatrix sample_cscg_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
    if (rows < 1 || cols < 1) {
        throw InvalidInput("sample_cscg_matrix: dimensions must be positive");
    }
    CMatrix out(rows, cols);
    // Filled row by row.
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            out(r, c) = rng.cscg();
        }
    }
    return out;
}

ChannelSet draw_channels(const SystemConfig& cfg, RngStream& rng) {
    ChannelSet ch;
    ch.h = sample_cscg_matrix(cfg.m_r, cfg.m_t, rng);
    ch.g1 = sample_cscg_matrix(cfg.m_1, cfg.m_t, rng);
    ch.g2 = sample_cscg_matrix(cfg.m_2, cfg.m_t, rng);
    ch.f = sample_cscg_matrix(cfg.m_2, cfg.m_1, rng);
    return ch;
}

namespace {

std::vector<double> resolve_split(const std::vector<double>& split, int streams, double power,
                                  const char* key) {
    if (split.empty()) {
        return std::vector<double>(static_cast<std::size_t>(streams), power / streams);
    }
    if (static_cast<int>(split.size()) != streams) {
        throw ConfigError(key, "power split length must equal the stream count");
    }
    if (std::any_of(split.begin(), split.end(), [](double w) { return !(w > 0.0); })) {
        throw ConfigError(key, "power split entries must be positive");
    }
    const double total = std::accumulate(split.begin(), split.end(), 0.0);
    if (std::abs(total - power) > 1e-9 * power) {
        throw ConfigError(key, "power split must sum to the PR transmit power");
    }
    return split;
}

RVector sqrt_of(const std::vector<double>& w) {
    RVector out(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = std::sqrt(w[i]);
    }
    return out;
}

}  // namespace

PrLinkDesign design_pr_link(const SystemConfig& cfg, const CMatrix& f, PrMode mode,
                            const PowerSplit& power_split) {
    if (f.rows() != cfg.m_2 || f.cols() != cfg.m_1) {
        throw InvalidInput("design_pr_link: f must be m_2 x m_1");
    }
    PrLinkDesign d;

    if (mode == PrMode::spatial_mux) {
        if (cfg.d_1 != cfg.m_1) {
            throw ConfigError("d_1", "spatial multiplexing requires d_1 = m_1");
        }
        if (cfg.d_2 != cfg.m_2) {
            throw ConfigError("d_2", "spatial multiplexing requires d_2 = m_2");
        }
        d.a1 = CMatrix::Identity(cfg.m_1, cfg.m_1) * std::sqrt(cfg.p_1 / cfg.m_1);
        d.a2 = CMatrix::Identity(cfg.m_2, cfg.m_2) * std::sqrt(cfg.p_2 / cfg.m_2);
        // Rectangular identity when m_1 != m_2 (b1 is d_2 x m_1).
        d.b1 = CMatrix::Identity(cfg.d_2, cfg.m_1);
        d.b2 = CMatrix::Identity(cfg.d_1, cfg.m_2);
    } else {
        const int d_max = std::min(cfg.m_1, cfg.m_2);
        if (cfg.d_1 > d_max) {
            throw ConfigError("d_1", "eigenmode transmission requires d_1 <= min(m_1, m_2)");
        }
        if (cfg.d_2 > d_max) {
            throw ConfigError("d_2", "eigenmode transmission requires d_2 <= min(m_1, m_2)");
        }
        const auto w1 = resolve_split(power_split.pr1, cfg.d_1, cfg.p_1, "p_1");
        const auto w2 = resolve_split(power_split.pr2, cfg.d_2, cfg.p_2, "p_2");

        // f = U_F Sigma_F V_F^H.
        Eigen::JacobiSVD<CMatrix> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const CMatrix& u_f = svd.matrixU();
        const CMatrix& v_f = svd.matrixV();

        d.a1 = v_f.leftCols(cfg.d_1) * sqrt_of(w1).asDiagonal();
        d.b1 = v_f.leftCols(cfg.d_2).adjoint();
        d.a2 = u_f.leftCols(cfg.d_2) * sqrt_of(w2).asDiagonal();
        d.b2 = u_f.leftCols(cfg.d_1).adjoint();
    }
    d.s1 = hermitian_part(d.a1 * d.a1.adjoint());
    d.s2 = hermitian_part(d.a2 * d.a2.adjoint());
    return d;
}

bool check_subsume_condition(const CMatrix& a, const CMatrix& b, const CMatrix& g) {
    if (a.rows() != g.rows() || b.cols() != g.rows()) {
        throw InvalidInput("check_subsume_condition: inconsistent dimensions");
    }
    const CMatrix x = a.adjoint() * g;
    const CMatrix y = b * g;
    CMatrix stacked(x.rows() + y.rows(), g.cols());
    stacked << x, y;
    return numerical_rank(stacked, 1e-9) == numerical_rank(x, 1e-9);
}

}  // namespace cogbeam
