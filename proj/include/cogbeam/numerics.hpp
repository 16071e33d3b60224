// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "cogbeam/types.hpp"

namespace cogbeam {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending and
/// eigenvector column i paired with eigenvalue i.
template <typename Real>
struct EvdResult {
    RealVector<Real> eigenvalues;
    ComplexMatrix<Real> eigenvectors;
};

template <typename Derived>
auto conj_transpose(const Eigen::MatrixBase<Derived>& m) {
    return m.adjoint();
}

/// (M + M^H) / 2.
template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    ComplexMatrix<Real> out = (m + m.adjoint()) * Real(0.5);
    return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  typename Eigen::NumTraits<typename Derived::Scalar>::Real rel_tol = 1e-12) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const auto norm = m.norm();
    return (m - m.adjoint()).norm() <= rel_tol * norm;
}

template <typename Derived>
auto hermitian_evd(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidInput("hermitian_evd: matrix must be square and non-empty");
    }
    const ComplexMatrix<Real> mat = m;
    if (!is_hermitian(mat)) {
        throw InvalidInput("hermitian_evd: matrix is not Hermitian");
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(mat);
    if (solver.info() != Eigen::Success) {
        throw InvalidInput("hermitian_evd: eigen-solver did not converge");
    }
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    const Eigen::Index n = mat.rows();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });

    EvdResult<Real> out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        out.eigenvalues(i) = values(src);
        out.eigenvectors.col(i) = vectors.col(src);
    }
    return out;
}

/// Square root R with R*R^H = S, built as U*Sigma^{1/2} from the EVD. Columns for
/// eigenvalues at or below rank_tol * lambda_max are dropped, so R has rank(S) columns.
template <typename Derived>
auto psd_sqrt(const Eigen::MatrixBase<Derived>& s,
              typename Eigen::NumTraits<typename Derived::Scalar>::Real rank_tol = 1e-12) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    const auto evd = hermitian_evd(s);
    const Eigen::Index n = evd.eigenvalues.size();
    const Real lambda_max = std::max(evd.eigenvalues(0), Real(0));
    if (evd.eigenvalues(n - 1) < -Real(1e-10) * lambda_max) {
        throw NotPsd("psd_sqrt: matrix has a significantly negative eigenvalue");
    }

    Eigen::Index rank = 0;
    while (rank < n && evd.eigenvalues(rank) > rank_tol * lambda_max && evd.eigenvalues(rank) > Real(0)) {
        ++rank;
    }
    ComplexMatrix<Real> root(n, rank);
    for (Eigen::Index i = 0; i < rank; ++i) {
        root.col(i) = evd.eigenvectors.col(i) * std::sqrt(evd.eigenvalues(i));
    }
    return root;
}

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m,
                            typename Eigen::NumTraits<typename Derived::Scalar>::Real rel_tol = 1e-9) {
    using Scalar = typename Derived::Scalar;
    if (m.rows() == 0 || m.cols() == 0) {
        return 0;
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> mat = m;
    Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(mat);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0) {
        return 0;
    }
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) {
        ++rank;
    }
    return rank;
}

/// Moore-Penrose inverse; singular values below rel_tol * sigma_max are treated as zero.
template <typename Derived>
auto pseudo_inverse(const Eigen::MatrixBase<Derived>& m,
                    typename Eigen::NumTraits<typename Derived::Scalar>::Real rel_tol = 1e-12) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    if (!(rel_tol > Real(0) && rel_tol < Real(1))) {
        throw InvalidInput("pseudo_inverse: rel_tol must lie in (0, 1)");
    }
    ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(m.cols(), m.rows());
    if (m.rows() == 0 || m.cols() == 0) {
        return out;
    }
    const ComplexMatrix<Real> mat = m;
    Eigen::JacobiSVD<ComplexMatrix<Real>> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) == Real(0)) {
        return out;
    }
    const Real cutoff = rel_tol * sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cutoff) {
            break;
        }
        out.noalias() += (svd.matrixV().col(i) / sv(i)) * svd.matrixU().col(i).adjoint();
    }
    return out;
}

/// Orthonormal basis for span(m): leading left singular vectors up to the numerical rank.
template <typename Derived>
auto orthonormal_basis(const Eigen::MatrixBase<Derived>& m,
                       typename Eigen::NumTraits<typename Derived::Scalar>::Real rel_tol = 1e-9) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    const ComplexMatrix<Real> mat = m;
    if (mat.cols() == 0) {
        return ComplexMatrix<Real>(mat.rows(), 0);
    }
    Eigen::JacobiSVD<ComplexMatrix<Real>> svd(mat, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(0) > Real(0) && sv(rank) > rel_tol * sv(0)) {
        ++rank;
    }
    ComplexMatrix<Real> basis = svd.matrixU().leftCols(rank);
    return basis;
}

/// Frobenius distance between the orthogonal projectors onto span(u1) and span(u2).
template <typename Derived1, typename Derived2>
auto subspace_distance(const Eigen::MatrixBase<Derived1>& u1, const Eigen::MatrixBase<Derived2>& u2) {
    using Real = typename Eigen::NumTraits<typename Derived1::Scalar>::Real;
    if (u1.rows() != u2.rows()) {
        throw InvalidInput("subspace_distance: bases must have the same row count");
    }
    const ComplexMatrix<Real> p1 = u1 * u1.adjoint();
    const ComplexMatrix<Real> p2 = u2 * u2.adjoint();
    return Real((p1 - p2).norm());
}

}  // namespace cogbeam
