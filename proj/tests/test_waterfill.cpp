// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <numeric>

#include "cogbeam/waterfill.hpp"
#include "support.hpp"

using namespace cogbeam;
using Catch::Approx;

namespace {

// Independent reference: bisection on the water level 1/mu for sum (level - rho/g)^+ = z.
double bisection_value(const std::vector<double>& gains, double rho, double z) {
    double lo = 0.0;
    double hi = z;
    for (double g : gains) {
        if (g > 0) hi = std::max(hi, z + rho / g);
    }
    auto used = [&](double level) {
        double s = 0;
        for (double g : gains) {
            if (g > 0) s += std::max(level - rho / g, 0.0);
        }
        return s;
    };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (used(mid) < z ? lo : hi) = mid;
    }
    const double level = 0.5 * (lo + hi);
    double f = 0;
    for (double g : gains) {
        if (g > 0) f += std::log1p(g * std::max(level - rho / g, 0.0) / rho);
    }
    return f;
}

std::vector<double> random_gains(RngStream& rng, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (auto& x : g) x = 0.05 + 5.0 * rng.uniform();
    std::sort(g.begin(), g.end(), std::greater<>());
    return g;
}

}  // namespace

TEST_CASE("water-filling closed cases", "[waterfill]") {
    SECTION("empty budget") {
        const auto s = waterfill<double>({2.0, 1.0}, 1.0, 0.0);
        CHECK(s.value == 0.0);
        CHECK(s.allocation == std::vector<double>{0.0, 0.0});
    }
    SECTION("single dimension") {
        const auto s = waterfill<double>({1.0}, 1.0, 3.0);
        CHECK(s.allocation[0] == Approx(3.0));
        CHECK(s.value == Approx(std::log(4.0)));
    }
    SECTION("two dimensions against a simplex grid") {
        const auto s = waterfill<double>({2.0, 1.0}, 1.0, 1.0);
        CHECK(s.allocation[0] == Approx(0.75));
        CHECK(s.allocation[1] == Approx(0.25));
        CHECK(s.value == Approx(std::log(2.5) + std::log(1.25)));
        double best = 0;
        for (int i = 0; i <= 100000; ++i) {
            const double x = i / 100000.0;
            best = std::max(best, std::log1p(2.0 * x) + std::log1p(1.0 - x));
        }
        CHECK(s.value == Approx(best).margin(1e-9));
        CHECK(s.value == Approx(1.1394).margin(1e-4));
    }
    SECTION("zero gains receive nothing") {
        const auto s = waterfill<double>({1.0, 0.0}, 1.0, 5.0);
        CHECK(s.allocation[1] == 0.0);
        CHECK(s.allocation[0] == Approx(5.0));
        const auto none = waterfill<double>({0.0, 0.0}, 1.0, 5.0);
        CHECK(none.value == 0.0);
    }
}

TEST_CASE("water-filling input checks", "[waterfill]") {
    CHECK_THROWS_AS(WaterfillCurve<double>({1.0, 2.0}, 1.0), InvalidInput);
    CHECK_THROWS_AS(WaterfillCurve<double>({-1.0}, 1.0), InvalidInput);
    CHECK_THROWS_AS(WaterfillCurve<double>({1.0}, 0.0), InvalidInput);
    CHECK_THROWS_AS(WaterfillCurve<double>({1.0}, 1.0).solve(-1.0), InvalidInput);
}

TEST_CASE("water-filling matches an iterative reference", "[waterfill]") {
    RngStream rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform() * 5);
        const auto gains = random_gains(rng, n);
        const double rho = 0.2 + 2.0 * rng.uniform();
        const double z = 50.0 * rng.uniform();
        const auto s = waterfill(gains, rho, z);
        REQUIRE(s.value == Approx(bisection_value(gains, rho, z)).margin(1e-9));
        const double spent = std::accumulate(s.allocation.begin(), s.allocation.end(), 0.0);
        REQUIRE(spent == Approx(z).margin(1e-9));
        for (double x : s.allocation) REQUIRE(x >= 0.0);
    }
}

TEST_CASE("water-filling value is smooth at breakpoints", "[waterfill]") {
    RngStream rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto gains = random_gains(rng, 4);
        const WaterfillCurve<double> curve(gains, 1.0);
        const auto& q = curve.breakpoints();
        for (std::size_t k = 0; k + 1 < q.size(); ++k) {
            const double eps = 1e-6;
            const double qk = q[k];
            CHECK(std::abs(curve.segment_value(qk, k + 1) - curve.segment_value(qk, k + 2)) <= 1e-6);
            CHECK(std::abs(curve.value(qk + eps) - curve.value(qk - eps)) <= 2 * eps * curve.derivative(qk) + 1e-9);
            const double left = (curve.value(qk) - curve.value(qk - eps)) / eps;
            const double right = (curve.value(qk + eps) - curve.value(qk)) / eps;
            CHECK(std::abs(left - right) <= 1e-4);
            // Both sides equal g_{k+1} / rho there.
            CHECK(curve.derivative(qk) == Approx(gains[k + 1]).epsilon(1e-9));
        }
    }
}

TEST_CASE("water-filling value is increasing and concave", "[waterfill]") {
    RngStream rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto gains = random_gains(rng, 1 + static_cast<int>(rng.uniform() * 4));
        const WaterfillCurve<double> curve(gains, 1.0);
        const double a = 100.0 * rng.uniform();
        const double b = 100.0 * rng.uniform();
        const double w = rng.uniform();
        REQUIRE(curve.value(std::max(a, b)) >= curve.value(std::min(a, b)));
        const double mid = curve.value(w * a + (1 - w) * b);
        REQUIRE(mid - (w * curve.value(a) + (1 - w) * curve.value(b)) >= -1e-9);
    }
}

TEST_CASE("water-filling float instantiation", "[waterfill]") {
    const auto s = waterfill<float>({2.0f, 1.0f}, 1.0f, 1.0f);
    CHECK(s.allocation[0] == Approx(0.75f).epsilon(1e-5));
}
