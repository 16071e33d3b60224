// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cogbeam {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seeded random stream. A stream is identified by (seed, key); derive() yields
/// statistically independent child streams, so trial i of a run always sees the
/// same numbers regardless of how trials are scheduled across workers.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))),
          engine_(key_) {}

    RngStream derive(std::uint64_t child) const {
        RngStream out(0);
        out.key_ = splitmix64(key_ ^ splitmix64(child + 0xd1b54a32d192ed03ULL));
        out.engine_.seed(out.key_);
        return out;
    }

    /// Uniform on [0, 1).
    double uniform() { return std::generate_canonical<double, 53>(engine_); }

    double normal() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with unit variance.
    std::complex<double> cscg() {
        constexpr double kHalf = 0.70710678118654752440;
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {kHalf * re, kHalf * im};
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t key_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cogbeam
