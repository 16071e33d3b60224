// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "cogbeam/airlink.hpp"
#include "cogbeam/beamforming.hpp"
#include "cogbeam/estimation.hpp"
#include "cogbeam/numerics.hpp"
#include "support.hpp"

using namespace cogbeam;
using Catch::Approx;

namespace {

// Direct determinant through the full complex LU, independent of the Cholesky path.
double log_det_direct(const CMatrix& m) {
    return std::log(std::abs((CMatrix::Identity(m.rows(), m.cols()) + m).determinant()));
}

}  // namespace

TEST_CASE("design_cb basics", "[beamforming]") {
    RngStream rng(1);
    const CMatrix h = testing::random_matrix(3, 6, rng);
    const CMatrix u = testing::random_unitary(6, rng).leftCols(2);

    SECTION("zero budget") {
        const CbDesign d = design_cb(u, h, 0.0, 1.0);
        CHECK(d.c_cr.norm() == 0.0);
        CHECK(d.rate == 0.0);
        CHECK(d.a_cr.cols() == 0);
    }
    SECTION("rate equals the log-determinant") {
        for (double budget : {0.5, 10.0, 1000.0}) {
            const CbDesign d = design_cb(u, h, budget, 0.7);
            const CMatrix hu = h * u;
            CHECK(d.rate == Approx(log_det_direct(hu * d.c_cr * hu.adjoint() / 0.7)).epsilon(1e-10));
            CHECK(d.power_used == Approx(budget).epsilon(1e-10));
            CHECK(d.c_cr.trace().real() == Approx(budget).epsilon(1e-10));
            CHECK((d.a_cr * d.a_cr.adjoint() - u * d.c_cr * u.adjoint()).norm() < 1e-9 * budget);
            CHECK(throughput(h, u, d.c_cr, 0.7, 0.0) == Approx(d.rate).epsilon(1e-10));
        }
    }
    SECTION("empty basis") {
        const CbDesign d = design_cb(CMatrix(6, 0), h, 10.0, 1.0);
        CHECK(d.rate == 0.0);
        CHECK(d.a_cr.rows() == 6);
        CHECK(d.a_cr.cols() == 0);
    }
    CHECK_THROWS_AS(design_cb(u, testing::random_matrix(3, 5, rng), 1.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(design_cb(u, h, -1.0, 1.0), InvalidInput);
}

TEST_CASE("perfect learning leaves no leakage at the PRs", "[beamforming]") {
    SystemConfig cfg;
    RngStream rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelSet ch = draw_channels(cfg, rng);
        const PrLinkDesign pr = design_pr_link(cfg, ch.f, PrMode::eigenmode);
        const CMatrix q = true_signal_covariance(ch, pr, cfg.alpha_1, cfg.alpha_2);
        const CbDesign d = design_cb(eic_from_true_covariance(q, cfg.rho_0).u_hat, ch.h, cfg.p_cr, cfg.rho_1);
        const double leak1 = (pr.b1 * ch.g1 * d.a_cr).norm();
        const double leak2 = (pr.b2 * ch.g2 * d.a_cr).norm();
        REQUIRE(leak1 <= 1e-8 * pr.b1.norm() * ch.g1.norm() * d.a_cr.norm());
        REQUIRE(leak2 <= 1e-8 * pr.b2.norm() * ch.g2.norm() * d.a_cr.norm());
    }
}

TEST_CASE("throughput", "[beamforming]") {
    RngStream rng(3);
    const CMatrix h = testing::random_matrix(3, 4, rng);
    const CMatrix u = testing::random_unitary(4, rng).leftCols(3);
    CHECK(throughput(h, u, CMatrix::Zero(3, 3), 1.0, 0.2) == 0.0);

    const CbDesign d = design_cb(u, h, 10.0, 1.0);
    CHECK(throughput(h, u, d.c_cr, 1.0, 1.0 - 1e-12) < 1e-10);
    CHECK(throughput(h, u, d.c_cr, 1.0, 0.25) == Approx(0.75 * d.rate));
    CHECK_THROWS_AS(throughput(h, u, d.c_cr, 1.0, 1.0), InvalidInput);

    double last = 0.0;
    for (double budget : {1.0, 10.0, 100.0}) {
        const double r = throughput(h, u, design_cb(u, h, budget, 1.0).c_cr, 1.0, 0.1);
        CHECK(r >= last);
        last = r;
    }
}

TEST_CASE("null space and P-SVD baseline", "[beamforming]") {
    RngStream rng(4);
    const CMatrix g = testing::random_matrix(2, 5, rng);
    const CMatrix n = null_space_basis(g, 5);
    CHECK(n.cols() == 3);
    CHECK((g * n).norm() < 1e-12);
    CHECK((n.adjoint() * n - CMatrix::Identity(3, 3)).norm() < 1e-12);

    const CMatrix h = testing::random_matrix(3, 5, rng);
    SECTION("no PR channels gives plain MIMO capacity") {
        CHECK(psvd_capacity(h, CMatrix(0, 5), CMatrix(0, 5), 50.0, 1.0) == Approx(mimo_capacity(h, 50.0, 1.0)));
    }
    SECTION("PRs using every CR dimension leave zero DoF") {
        const CMatrix g1 = testing::random_matrix(3, 5, rng);
        const CMatrix g2 = testing::random_matrix(2, 5, rng);
        CHECK(psvd_capacity(h, g1, g2, 1e3, 1.0) == Approx(psvd_capacity(h, g1, g2, 1e6, 1.0)).margin(1e-12));
    }
    SECTION("high-SNR slope is DoF * ln 10 per 10 dB") {
        const CMatrix g1 = testing::random_matrix(2, 5, rng);
        const CMatrix g2 = testing::random_matrix(2, 5, rng);
        const double step = psvd_capacity(h, g1, g2, 1e5, 1.0) - psvd_capacity(h, g1, g2, 1e4, 1.0);
        CHECK(step == Approx(dof(5, 3, 2, 2) * std::log(10.0)).epsilon(0.1));
        const double full = mimo_capacity(h, 1e5, 1.0) - mimo_capacity(h, 1e4, 1.0);
        CHECK(full == Approx(3 * std::log(10.0)).epsilon(0.1));
    }
}

TEST_CASE("log_det_identity_plus", "[beamforming]") {
    RngStream rng(5);
    const CMatrix x = testing::random_matrix(4, 4, rng);
    const CMatrix m = x * x.adjoint();
    CHECK(log_det_identity_plus(m) == Approx(log_det_direct(m)).epsilon(1e-12));
    CHECK(log_det_identity_plus(CMatrix::Zero(3, 3)) == 0.0);
    CHECK_THROWS_AS(log_det_identity_plus(-2.0 * CMatrix::Identity(2, 2)), InvalidInput);
}

TEST_CASE("degrees of freedom", "[beamforming]") {
    CHECK(dof(5, 3, 1, 1) == 3);
    CHECK(dof(5, 3, 2, 2) == 1);
    CHECK(dof(5, 3, 1, 1) / dof(5, 3, 2, 2) == 3);
    CHECK(dof(6, 3, 0, 0) == 3);
    CHECK(dof(4, 8, 0, 0) == 4);
    CHECK(dof(4, 3, 3, 2) == 0);
    CHECK_THROWS_AS(dof(4, 3, -1, 0), InvalidInput);
}
