#pragma once

// Independent oracles used by the tests: deliberately naive implementations
// that avoid the code paths they check.

#include <cmath>
#include <complex>
#include <vector>

#include "ncmaj/ensembles.hpp"
#include "ncmaj/fourier.hpp"
#include "ncmaj/ncpoly.hpp"

namespace oracles {

using ncmaj::Complex;
using ncmaj::Matrix;

// Attempts a Cholesky factorization of a Hermitian matrix; returns false if a
// pivot goes nonpositive, i.e. the matrix is not positive definite.
inline bool cholesky_posdef(Matrix a) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double pivot = a(k, k).real();
        if (pivot <= 0.0) return false;
        const double root = std::sqrt(pivot);
        for (Eigen::Index i = k; i < n; ++i) a(i, k) /= root;
        for (Eigen::Index j = k + 1; j < n; ++j)
            for (Eigen::Index i = j; i < n; ++i) a(i, j) -= a(i, k) * std::conj(a(j, k));
    }
    return true;
}

// Largest singular value by bisection: t >= sigma_max(A) iff t^2 I - A* A is
// positive semidefinite.
inline double op_norm_bisection(const Matrix& a, double tol = 1e-12) {
    const Matrix gram = a.adjoint() * a;
    double hi = std::sqrt(gram.cwiseAbs().sum()) + 1.0;
    double lo = 0.0;
    const Eigen::Index n = gram.rows();
    while (hi - lo > tol * (1.0 + hi)) {
        const double mid = 0.5 * (lo + hi);
        const Matrix shifted =
            mid * mid * Matrix::Identity(n, n) - gram + 1e-300 * Matrix::Identity(n, n);
        if (cholesky_posdef(shifted))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Partial trace over the second factor by explicit four-index summation.
inline Matrix partial_trace_2_loops(const Matrix& x, int n) {
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) out(i, j) += x(i * n + l, j * n + l);
    return out;
}

// (U (.) V) by the defining four-index loop over vector inner products.
inline Matrix odot_loops(const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
    const int n = static_cast<int>(u[0].rows());
    Matrix out = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Complex acc = 0.0;
                    for (std::size_t a = 0; a < u.size(); ++a)
                        acc += u[a](i, j) * std::conj(v[a](k, l));
                    out(i * n + k, j * n + l) = acc;
                }
    return out;
}

inline Matrix kron_loops(const Matrix& a, const Matrix& b) {
    const Eigen::Index n = a.rows(), m = b.rows();
    Matrix out(n * m, a.cols() * b.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < m; ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * m + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// Convolution by the direct 2^m-term sum over omega.
inline Matrix convolve_pointwise(const ncmaj::CubeFunction& f, const ncmaj::CubeFunction& h,
                                 std::uint32_t sigma_idx) {
    const std::uint32_t total = 1u << f.m;
    Matrix acc = Matrix::Zero(f.n, f.n);
    for (std::uint32_t omega = 0; omega < total; ++omega) {
        // sigma . omega^{-1} = sigma . omega since omega entries are +-1
        const std::uint32_t shifted = sigma_idx ^ omega;
        acc += ncmaj::inverse_transform(f, shifted) * ncmaj::inverse_transform(h, omega);
    }
    return acc / static_cast<double>(total);
}

// Influence through the pointwise derivative (f(sigma) - f(sigma^i)) / 2.
inline double influence_pointwise(const ncmaj::CubeFunction& f, int i) {
    const std::uint32_t total = 1u << f.m;
    const std::uint32_t bit = 1u << (i - 1);
    double acc = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx) {
        const Matrix d =
            0.5 * (ncmaj::inverse_transform(f, idx) - ncmaj::inverse_transform(f, idx ^ bit));
        acc += d.squaredNorm();
    }
    return acc / static_cast<double>(total);
}

// Polynomial evaluation by independent term accumulation in reversed subset
// order, with right-to-left products.
inline Matrix evaluate_reversed(const ncmaj::NCPoly& q, const std::vector<Matrix>& inputs) {
    Matrix acc = Matrix::Zero(q.n_var, q.n_var);
    std::vector<std::uint32_t> masks;
    for (const auto& [mask, c] : q.coeffs) masks.push_back(mask);
    for (auto it = masks.rbegin(); it != masks.rend(); ++it) {
        const std::uint32_t mask = *it;
        Matrix prod = Matrix::Identity(q.n_var, q.n_var);
        for (int i = q.m - 1; i >= 0; --i)
            if (mask & (1u << i)) prod = inputs[static_cast<std::size_t>(i)] * prod;
        acc += ncmaj::embed_iota(q.coeff(mask), q.n_var) * prod;
    }
    return acc;
}

// Exact Boolean moment by enumeration, written independently of the library.
inline double boolean_moment_enum(const ncmaj::NCPoly& q, int K, bool normalized) {
    const std::uint32_t total = 1u << q.m;
    double acc = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx) {
        Matrix v = Matrix::Zero(q.n_coeff, q.n_coeff);
        for (const auto& [mask, c] : q.coeffs) {
            int s = 1;
            for (int i = 0; i < q.m; ++i)
                if ((mask & (1u << i)) && (idx & (1u << i))) s = -s;
            v += static_cast<double>(s) * c;
        }
        Matrix g = v * v.adjoint();
        Matrix pw = g;
        for (int k = 1; k < K; ++k) pw = pw * g;
        acc += pw.real().trace();
    }
    acc /= static_cast<double>(total);
    return normalized ? acc / q.n_coeff : acc;
}

// Random matrices for tests, seeded through the library stream type.
inline Matrix random_matrix(int rows, int cols, ncmaj::Rng& rng) {
    return ncmaj::ginibre(rows, cols, rng);
}

inline Matrix random_hermitian(int n, ncmaj::Rng& rng) {
    const Matrix a = ncmaj::ginibre(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double stat = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        stat = std::max(stat, std::abs(fa - fb));
    }
    return stat;
}

}  // namespace oracles
