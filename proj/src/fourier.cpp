#include "ncmaj/fourier.hpp"

namespace ncmaj {

CubeFunction::CubeFunction(int m_, int n_) : m(m_), n(n_) {
    if (m < 0 || m > kMaxVars) throw InvalidInput("CubeFunction: variable count out of range");
    if (n <= 0) throw InvalidInput("CubeFunction: matrix dimension must be positive");
}

Matrix CubeFunction::coeff(std::uint32_t mask) const {
    auto it = coeffs.find(mask);
    if (it == coeffs.end()) return Matrix::Zero(n, n);
    return it->second;
}

void CubeFunction::set_coeff(std::uint32_t mask, Matrix value) {
    if (mask >= (1u << m)) throw InvalidInput("CubeFunction: mask out of range");
    if (value.rows() != n || value.cols() != n)
        throw InvalidInput("CubeFunction: coefficient has wrong dimension");
    if (!all_finite(value)) throw InvalidInput("CubeFunction: non-finite coefficient");
    coeffs[mask] = std::move(value);
}

CubeFunction CubeFunction::constant(int m, Matrix value) {
    CubeFunction f(m, static_cast<int>(value.rows()));
    f.set_coeff(0, std::move(value));
    return f;
}

CubeFunction CubeFunction::dictator(int m, int i, int n) {
    if (i < 1 || i > m) throw InvalidInput("dictator: variable index out of range");
    CubeFunction f(m, n);
    f.set_coeff(1u << (i - 1), Matrix::Identity(n, n));
    return f;
}

CubeFunction fourier_transform(const std::vector<Matrix>& values, int m) {
    if (m < 0 || m > CubeFunction::kMaxEnumVars)
        throw InvalidInput("fourier_transform: enumeration requires m <= 20");
    const std::size_t total = std::size_t{1} << m;
    if (values.size() != total) throw InvalidInput("fourier_transform: table must have 2^m entries");
    const Eigen::Index n = values[0].rows();
    for (const auto& v : values)
        if (v.rows() != n || v.cols() != n)
            throw InvalidInput("fourier_transform: ragged value table");

    CubeFunction f(m, static_cast<int>(n));
    const double scale = 1.0 / static_cast<double>(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        Matrix acc = Matrix::Zero(n, n);
        for (std::uint32_t idx = 0; idx < total; ++idx) {
            if (walsh_sign(idx, mask) > 0)
                acc += values[idx];
            else
                acc -= values[idx];
        }
        acc *= scale;
        if (acc.cwiseAbs().maxCoeff() > 0.0) f.coeffs[mask] = std::move(acc);
    }
    return f;
}

Matrix inverse_transform(const CubeFunction& f, std::uint32_t idx) {
    Matrix acc = Matrix::Zero(f.n, f.n);
    for (const auto& [mask, c] : f.coeffs) {
        if (walsh_sign(idx, mask) > 0)
            acc += c;
        else
            acc -= c;
    }
    return acc;
}

Matrix inverse_transform(const CubeFunction& f, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != f.m)
        throw InvalidInput("inverse_transform: sign vector has wrong length");
    std::uint32_t idx = 0;
    for (int i = 0; i < f.m; ++i) {
        if (sigma[i] == -1)
            idx |= 1u << i;
        else if (sigma[i] != 1)
            throw InvalidInput("inverse_transform: sign entries must be +-1");
    }
    return inverse_transform(f, idx);
}

double influence(const CubeFunction& f, int i) {
    if (i < 1 || i > f.m) throw InvalidInput("influence: variable index out of range");
    const std::uint32_t bit = 1u << (i - 1);
    double acc = 0.0;
    for (const auto& [mask, c] : f.coeffs)
        if (mask & bit) acc += c.squaredNorm();
    return acc;
}

double max_influence(const CubeFunction& f) {
    double best = 0.0;
    for (int i = 1; i <= f.m; ++i) best = std::max(best, influence(f, i));
    return best;
}

CubeFunction apply_Trho(const CubeFunction& f, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("apply_Trho: rho must lie in [0,1]");
    CubeFunction out(f.m, f.n);
    for (const auto& [mask, c] : f.coeffs) {
        const int level = __builtin_popcount(mask);
        const double factor = std::pow(rho, level);
        if (factor == 0.0 && level > 0) continue;
        out.coeffs[mask] = factor * c;
    }
    return out;
}

CubeFunction project_levels(const CubeFunction& f, const std::function<bool(int)>& selector) {
    CubeFunction out(f.m, f.n);
    for (const auto& [mask, c] : f.coeffs)
        if (selector(__builtin_popcount(mask))) out.coeffs[mask] = c;
    return out;
}

CubeFunction convolve(const CubeFunction& f, const CubeFunction& h) {
    if (f.m != h.m || f.n != h.n) throw InvalidInput("convolve: shape mismatch");
    CubeFunction out(f.m, f.n);
    for (const auto& [mask, cf] : f.coeffs) {
        auto it = h.coeffs.find(mask);
        if (it == h.coeffs.end()) continue;
        out.coeffs[mask] = cf * it->second;
    }
    return out;
}

double plancherel_mass(const CubeFunction& f) {
    double acc = 0.0;
    for (const auto& [mask, c] : f.coeffs) acc += c.squaredNorm();
    return acc;
}

double max_pointwise_norm(const CubeFunction& f) {
    if (f.m > CubeFunction::kMaxEnumVars)
        throw InvalidInput("max_pointwise_norm: enumeration requires m <= 20");
    const std::uint32_t total = 1u << f.m;
    double best = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx)
        best = std::max(best, op_norm(inverse_transform(f, idx)));
    return best;
}

}  // namespace ncmaj
