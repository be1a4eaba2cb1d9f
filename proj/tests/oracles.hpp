#pragma once

// Test-only reference computations, kept independent of the library code
// paths they are used to check.

#include "sturmfsm/numeric.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace oracles {

using sturmfsm::BigInt;
using sturmfsm::BigRat;

// Eigenvalues via Eigen's dense symmetric solver (brute-force reference).
inline std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(a, Eigen::EigenvaluesOnly);
    return {s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size()};
}

inline Eigen::MatrixXd dense_tridiag(const Eigen::VectorXd& diag) {
    Eigen::Index n = diag.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = diag[i];
    for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
    return a;
}

// ||A^{-1}||_inf by solving for every basis column with dense LU.
inline double dense_inverse_infnorm(const Eigen::VectorXd& diag) {
    Eigen::MatrixXd a = dense_tridiag(diag);
    Eigen::MatrixXd inv = a.partialPivLu().solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
    return inv.cwiseAbs().rowwise().sum().maxCoeff();
}

// floor(sqrt(n)) for big integers (Newton).
inline BigInt isqrt(const BigInt& n) {
    if (n < 2) return n;
    BigInt x = BigInt(1) << (sturmfsm::bit_length(n) / 2 + 1);
    while (true) {
        BigInt y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

// Dyadic approximation of sqrt(n) with the given fractional bits,
// |result - sqrt(n)| < 2^-bits.
inline BigRat dyadic_sqrt(std::int64_t n, int bits) {
    BigInt scaled = isqrt(BigInt(n) << (2 * bits));
    return BigRat(scaled, BigInt(1) << bits);
}

// chi_{[1-alpha,1)}(n*alpha + theta mod 1) evaluated in exact rational
// arithmetic for a rational stand-in alpha (e.g. a 256-bit dyadic).
inline int chi_word_value(const BigRat& alpha, const BigRat& theta, std::int64_t n, bool tilde = false) {
    BigRat x = sturmfsm::mod1(alpha * n + theta);
    if (!tilde) return x >= 1 - alpha ? 1 : 0;
    return (x == 0 || x > 1 - alpha) ? 1 : 0;
}

}  // namespace oracles
