// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cogbeam/rng.hpp"
#include "cogbeam/scenario.hpp"

namespace testing {

using cogbeam::CMatrix;

inline CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, cogbeam::RngStream& rng) {
    return cogbeam::sample_cscg_matrix(rows, cols, rng);
}

// Haar-ish unitary from the QR of a Gaussian matrix.
inline CMatrix random_unitary(Eigen::Index n, cogbeam::RngStream& rng) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, n, rng));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

inline CMatrix with_eigenvalues(const std::vector<double>& eigs, const CMatrix& w) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(eigs.size()));
    for (std::size_t i = 0; i < eigs.size(); ++i) d(static_cast<Eigen::Index>(i)) = eigs[i];
    return w * d.cast<cogbeam::Complex>().asDiagonal() * w.adjoint();
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Least-squares slope of y on x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
