#pragma once

#include "ncmaj/fourier.hpp"

namespace ncmaj {

// Noncommutative multilinear polynomial sum_S Q_hat(S) prod_{i in S} X_i with
// the product taken in increasing index order. Coefficients are stored at
// their native n_coeff x n_coeff size; an embedded polynomial (n_var > n_coeff)
// evaluates with each coefficient zero-padded into the top-left block.
struct NCPoly {
    int m = 0;
    int n_coeff = 0;
    int n_var = 0;
    bool embedded = false;
    std::map<std::uint32_t, Matrix> coeffs;

    NCPoly() = default;
    NCPoly(int m_, int n_) : m(m_), n_coeff(n_), n_var(n_) {}

    int degree() const;
    Matrix coeff(std::uint32_t mask) const;
    void set_coeff(std::uint32_t mask, Matrix value);
};

NCPoly from_cube_function(const CubeFunction& f);
CubeFunction to_cube_function(const NCPoly& q);

// Full evaluation at m square matrices of size n_var.
Matrix evaluate(const NCPoly& q, const std::vector<Matrix>& inputs);
Matrix evaluate(const NCPoly& q, const std::vector<Matrix>& inputs, Complex scale);

// Scalar inputs sigma * I, by point index (bit i-1 set means sigma_i = -1).
// Result is n_coeff x n_coeff and equals the originating cube function.
Matrix evaluate_signs(const NCPoly& q, std::uint32_t idx);

// Inputs for the top-block evaluation path. A value is either a scalar s
// (standing for s * I) or a k x n_var block holding the first k rows of an
// n_var x n_var matrix whose remaining rows vanish.
struct BlockInput {
    bool is_scalar = false;
    double scalar = 0.0;
    Matrix block;

    static BlockInput from_scalar(double s) { return {true, s, {}}; }
    static BlockInput from_block(Matrix b) { return {false, 0.0, std::move(b)}; }
};

// Top rows of the evaluation: returns the n_coeff x n_var block R such that
// the full value is R stacked on zero rows. Exact for inputs of the stated
// shape; cross-checked against evaluate() in tests.
Matrix evaluate_blocks(const NCPoly& q, const std::vector<BlockInput>& inputs);

// Zero-padded extension: coefficients embed into p x p, influences unchanged.
NCPoly embed(const NCPoly& q, int p);

// Var(Q) = sum_{S != empty} Tr(Q_hat(S) Q_hat(S)*)
double variance(const NCPoly& q);

double influence(const NCPoly& q, int i);
double max_influence(const NCPoly& q);
double plancherel_mass(const NCPoly& q);

}  // namespace ncmaj
