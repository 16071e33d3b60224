// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cogbeam {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Double-precision aliases used by the simulation layers.
using Complex = std::complex<double>;
using CMatrix = ComplexMatrix<double>;
using RVector = RealVector<double>;

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotPsd : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// Raised when B*G is not in the row space of A^H*G; carries the least-squares residual.
class NoExactSolution : public std::runtime_error {
public:
    NoExactSolution(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class UndefinedBound : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cogbeam
