// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "cogbeam/airlink.hpp"
#include "cogbeam/estimation.hpp"
#include "cogbeam/numerics.hpp"
#include "support.hpp"

using namespace cogbeam;
using Catch::Approx;

namespace {

struct Fixture {
    SystemConfig cfg;
    ChannelSet channels;
    PrLinkDesign design;

    explicit Fixture(std::uint64_t seed) {
        RngStream rng(seed);
        channels = draw_channels(cfg, rng);
        design = design_pr_link(cfg, channels.f, PrMode::eigenmode);
    }
};

}  // namespace

TEST_CASE("tdd schedule", "[airlink]") {
    RngStream rng(1);
    SECTION("alpha_1 = 0 never schedules PR1") {
        const TddSchedule s = generate_tdd_schedule(5000, 0.0, 0.5, 1, rng);
        CHECK(s.count1() == 0);
        CHECK(s.count2() > 0);
    }
    SECTION("alpha sum of one leaves no idle symbol") {
        const TddSchedule s = generate_tdd_schedule(5000, 0.3, 0.7, 1, rng);
        CHECK(s.count1() + s.count2() == 5000);
    }
    SECTION("empirical frequency") {
        const TddSchedule s = generate_tdd_schedule(100000, 0.3, 0.6, 1, rng);
        CHECK(s.count1() / 1e5 == Approx(0.3).margin(0.01));
        CHECK(s.count2() / 1e5 == Approx(0.6).margin(0.01));
    }
    SECTION("exclusivity") {
        for (int block : {1, 7, 50}) {
            const TddSchedule s = generate_tdd_schedule(3001, 0.45, 0.45, block, rng);
            REQUIRE(s.q1.size() == 3001);
            for (std::size_t i = 0; i < s.q1.size(); ++i) REQUIRE(s.q1[i] * s.q2[i] == 0);
        }
    }
    SECTION("blocks hold one state") {
        const TddSchedule s = generate_tdd_schedule(1000, 0.4, 0.4, 10, rng);
        for (int b = 0; b < 100; ++b) {
            for (int i = 1; i < 10; ++i) {
                REQUIRE(s.q1[b * 10 + i] == s.q1[b * 10]);
                REQUIRE(s.q2[b * 10 + i] == s.q2[b * 10]);
            }
        }
    }
    CHECK_THROWS_AS(generate_tdd_schedule(10, 0.6, 0.6, 1, rng), ConfigError);
    CHECK_THROWS_AS(generate_tdd_schedule(10, -0.1, 0.6, 1, rng), ConfigError);
}

TEST_CASE("observations without noise", "[airlink]") {
    Fixture fx(2);
    RngStream rng(3);
    TddSchedule idle;
    idle.n = 20;
    idle.q1.assign(20, 0);
    idle.q2.assign(20, 0);
    CHECK(observe_pr_signals(fx.channels, fx.design, idle, 0.0, rng).y.norm() == 0.0);

    TddSchedule one = idle;
    one.q1[5] = 1;
    const ObservationBatch b = observe_pr_signals(fx.channels, fx.design, one, 0.0, rng);
    const CMatrix basis = orthonormal_basis(CMatrix(fx.channels.g1.adjoint() * fx.design.a1));
    const CMatrix col = b.y.col(5);
    CHECK(col.norm() > 0.0);
    CHECK((col - basis * (basis.adjoint() * col)).norm() < 1e-12 * col.norm());
    CHECK((b.y - b.signal_only).norm() == 0.0);
}

TEST_CASE("true_signal_covariance", "[airlink]") {
    Fixture fx(4);
    CHECK(true_signal_covariance(fx.channels, fx.design, 0.0, 0.0).norm() == 0.0);

    const CMatrix q = true_signal_covariance(fx.channels, fx.design, 0.5, 0.5);
    CHECK(is_hermitian(q));
    CHECK(numerical_rank(q) == fx.cfg.d_1 + fx.cfg.d_2);

    // Linearity in S_1.
    const CMatrix first = true_signal_covariance(fx.channels, fx.design, 0.5, 0.0);
    PrLinkDesign scaled = fx.design;
    scaled.s1 *= 3.0;
    scaled.a1 *= std::sqrt(3.0);
    CHECK((true_signal_covariance(fx.channels, scaled, 0.5, 0.0) - 3.0 * first).norm() < 1e-10 * first.norm());

    SystemConfig small;
    small.m_t = 5;
    small.m_1 = small.m_2 = 2;
    small.d_1 = small.d_2 = 1;
    RngStream rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ChannelSet ch = draw_channels(small, rng);
        const PrLinkDesign d = design_pr_link(small, ch.f, PrMode::eigenmode);
        CHECK(numerical_rank(true_signal_covariance(ch, d, 0.5, 0.5)) == 2);
    }
}

TEST_CASE("sample covariance converges to Q_s + rho_0 I", "[airlink]") {
    Fixture fx(6);
    RngStream rng(7);
    const int n = 100000;
    const TddSchedule s = generate_tdd_schedule(n, fx.cfg.alpha_1, fx.cfg.alpha_2, 1, rng);
    const ObservationBatch b = observe_pr_signals(fx.channels, fx.design, s, fx.cfg.rho_0, rng);
    const CMatrix target = true_signal_covariance(fx.channels, fx.design, fx.cfg.alpha_1, fx.cfg.alpha_2) +
                           fx.cfg.rho_0 * CMatrix::Identity(fx.cfg.m_t, fx.cfg.m_t);
    CHECK((sample_covariance(b) - target).norm() <= 0.02 * target.norm());

    // Noise alone is white with power rho_0.
    const CMatrix zz = sample_covariance(b.noise());
    CHECK((zz - fx.cfg.rho_0 * CMatrix::Identity(fx.cfg.m_t, fx.cfg.m_t)).norm() < 0.05);
}

TEST_CASE("observation streams are reproducible", "[airlink]") {
    Fixture fx(8);
    RngStream a(9), b(9);
    const TddSchedule sa = generate_tdd_schedule(200, 0.5, 0.5, 1, a);
    const TddSchedule sb = generate_tdd_schedule(200, 0.5, 0.5, 1, b);
    CHECK(sa.q1 == sb.q1);
    CHECK(observe_pr_signals(fx.channels, fx.design, sa, 1.0, a).y ==
          observe_pr_signals(fx.channels, fx.design, sb, 1.0, b).y);
}
