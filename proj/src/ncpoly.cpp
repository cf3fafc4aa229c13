#include "ncmaj/ncpoly.hpp"

namespace ncmaj {

int NCPoly::degree() const {
    int d = 0;
    for (const auto& [mask, c] : coeffs) d = std::max(d, __builtin_popcount(mask));
    return d;
}

Matrix NCPoly::coeff(std::uint32_t mask) const {
    auto it = coeffs.find(mask);
    if (it == coeffs.end()) return Matrix::Zero(n_coeff, n_coeff);
    return it->second;
}

void NCPoly::set_coeff(std::uint32_t mask, Matrix value) {
    if (mask >= (1u << m)) throw InvalidInput("NCPoly: mask out of range");
    if (value.rows() != n_coeff || value.cols() != n_coeff)
        throw InvalidInput("NCPoly: coefficient has wrong dimension");
    coeffs[mask] = std::move(value);
}

NCPoly from_cube_function(const CubeFunction& f) {
    NCPoly q(f.m, f.n);
    q.coeffs = f.coeffs;
    return q;
}

CubeFunction to_cube_function(const NCPoly& q) {
    CubeFunction f(q.m, q.n_coeff);
    f.coeffs = q.coeffs;
    return f;
}

Matrix evaluate(const NCPoly& q, const std::vector<Matrix>& inputs) {
    if (static_cast<int>(inputs.size()) != q.m)
        throw InvalidInput("evaluate: expected one input per variable");
    for (const auto& x : inputs)
        if (x.rows() != q.n_var || x.cols() != q.n_var)
            throw InvalidInput("evaluate: input has wrong dimension");

    Matrix acc = Matrix::Zero(q.n_var, q.n_var);
    for (const auto& [mask, c] : q.coeffs) {
        Matrix term = embed_iota(c, q.n_var);
        for (int i = 0; i < q.m; ++i)
            if (mask & (1u << i)) term = term * inputs[static_cast<std::size_t>(i)];
        acc += term;
    }
    return acc;
}

Matrix evaluate(const NCPoly& q, const std::vector<Matrix>& inputs, Complex scale) {
    return scale * evaluate(q, inputs);
}

Matrix evaluate_signs(const NCPoly& q, std::uint32_t idx) {
    Matrix acc = Matrix::Zero(q.n_coeff, q.n_coeff);
    for (const auto& [mask, c] : q.coeffs) {
        if (walsh_sign(idx, mask) > 0)
            acc += c;
        else
            acc -= c;
    }
    return acc;
}

Matrix evaluate_blocks(const NCPoly& q, const std::vector<BlockInput>& inputs) {
    if (static_cast<int>(inputs.size()) != q.m)
        throw InvalidInput("evaluate_blocks: expected one input per variable");
    const int n = q.n_coeff;
    const int p = q.n_var;
    for (const auto& x : inputs)
        if (!x.is_scalar && x.block.cols() != p)
            throw InvalidInput("evaluate_blocks: block has wrong width");

    Matrix acc = Matrix::Zero(n, p);
    for (const auto& [mask, c] : q.coeffs) {
        // running product as (rows x p) block; scalar factors fold into `s`
        Complex s = 1.0;
        Matrix term;
        bool have_block = false;
        for (int i = 0; i < q.m; ++i) {
            if (!(mask & (1u << i))) continue;
            const BlockInput& x = inputs[static_cast<std::size_t>(i)];
            if (x.is_scalar) {
                s *= x.scalar;
            } else if (!have_block) {
                // first matrix factor: columns of the coefficient beyond the
                // block's active rows hit zero rows of the virtual input
                const Eigen::Index w = std::min<Eigen::Index>(n, x.block.rows());
                term = c.leftCols(w) * x.block.topRows(w);
                have_block = true;
            } else {
                term = term.leftCols(x.block.rows()) * x.block;
            }
        }
        if (!have_block) {
            Matrix base = Matrix::Zero(n, p);
            base.leftCols(n) = c;
            acc += s * base;
        } else {
            acc += s * term;
        }
    }
    return acc;
}

NCPoly embed(const NCPoly& q, int p) {
    if (p < q.n_coeff) throw InvalidInput("embed: target dimension smaller than coefficients");
    NCPoly out = q;
    out.n_var = p;
    out.embedded = p > q.n_coeff;
    return out;
}

double variance(const NCPoly& q) {
    double acc = 0.0;
    for (const auto& [mask, c] : q.coeffs)
        if (mask != 0) acc += c.squaredNorm();
    return acc;
}

double influence(const NCPoly& q, int i) {
    if (i < 1 || i > q.m) throw InvalidInput("influence: variable index out of range");
    const std::uint32_t bit = 1u << (i - 1);
    double acc = 0.0;
    for (const auto& [mask, c] : q.coeffs)
        if (mask & bit) acc += c.squaredNorm();
    return acc;
}

double max_influence(const NCPoly& q) {
    double best = 0.0;
    for (int i = 1; i <= q.m; ++i) best = std::max(best, influence(q, i));
    return best;
}

double plancherel_mass(const NCPoly& q) {
    double acc = 0.0;
    for (const auto& [mask, c] : q.coeffs) acc += c.squaredNorm();
    return acc;
}

}  // namespace ncmaj
