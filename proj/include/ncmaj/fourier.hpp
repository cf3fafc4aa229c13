#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "ncmaj/linalg.hpp"

namespace ncmaj {

// Matrix-valued function on {-1,1}^m stored as its Fourier coefficient table.
// Subsets of {1..m} are bitmasks; an absent subset is a zero coefficient.
//
// Sign-vector indexing: point index idx in [0, 2^m) has sigma_i = -1 iff bit
// (i-1) of idx is set, so W_S(sigma) = (-1)^popcount(idx & S).
struct CubeFunction {
    static constexpr int kMaxVars = 24;   // bitmask storage cap
    static constexpr int kMaxEnumVars = 20;  // exact enumeration cap

    int m = 0;
    int n = 0;
    std::map<std::uint32_t, Matrix> coeffs;

    CubeFunction() = default;
    CubeFunction(int m_, int n_);

    Matrix coeff(std::uint32_t mask) const;
    void set_coeff(std::uint32_t mask, Matrix value);

    static CubeFunction constant(int m, Matrix value);
    static CubeFunction dictator(int m, int i, int n);
};

inline int sign_at(std::uint32_t idx, int i) { return (idx >> (i - 1)) & 1u ? -1 : 1; }
inline int walsh_sign(std::uint32_t idx, std::uint32_t mask) {
    return __builtin_popcount(idx & mask) & 1 ? -1 : 1;
}

// f_hat(S) = 2^{-m} sum_sigma f(sigma) W_S(sigma); values indexed as above.
CubeFunction fourier_transform(const std::vector<Matrix>& values, int m);

// f(sigma) = sum_S f_hat(S) W_S(sigma)
Matrix inverse_transform(const CubeFunction& f, const std::vector<int>& sigma);
Matrix inverse_transform(const CubeFunction& f, std::uint32_t idx);

// Inf_i f = sum_{S containing i} Tr(f_hat(S) f_hat(S)*)
double influence(const CubeFunction& f, int i);
double max_influence(const CubeFunction& f);

// Ornstein-Uhlenbeck semigroup: coefficient for S scaled by rho^{|S|}.
CubeFunction apply_Trho(const CubeFunction& f, double rho);

// Keeps exactly the coefficients whose level |S| the selector accepts.
CubeFunction project_levels(const CubeFunction& f, const std::function<bool(int)>& selector);

// Coefficientwise matrix product f_hat(S) h_hat(S); equals the pointwise
// average 2^{-m} sum_omega f(sigma . omega^{-1}) h(omega).
CubeFunction convolve(const CubeFunction& f, const CubeFunction& h);

// sum_S Tr(f_hat(S) f_hat(S)*)
double plancherel_mass(const CubeFunction& f);

// max over sign patterns of ||f(sigma)||, by enumeration (m <= 20).
double max_pointwise_norm(const CubeFunction& f);

}  // namespace ncmaj
