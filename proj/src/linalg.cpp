#include "ncmaj/linalg.hpp"

#include <cmath>

namespace ncmaj {

namespace {

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// relu smoothed by a Gaussian of width lambda, with derivatives
double srelu(double x, double l) { return x * norm_cdf(x / l) + l * norm_pdf(x / l); }
double srelu1(double x, double l) { return norm_cdf(x / l); }
double srelu2(double x, double l) { return norm_pdf(x / l) / l; }
double srelu3(double x, double l) { return -x * norm_pdf(x / l) / (l * l * l); }

double relu(double x) { return x > 0 ? x : 0.0; }

}  // namespace

ScalarTestFn ScalarTestFn::chop() { return {Kind::Chop, 0, 0, 1, 0}; }
ScalarTestFn ScalarTestFn::hinge() { return {Kind::Hinge, 0, 0, 1, 0}; }

ScalarTestFn ScalarTestFn::ramp(double r, double s) {
    if (s <= 0) throw InvalidInput("ramp: width s must be positive");
    return {Kind::Ramp, r, s, 1, 0};
}

ScalarTestFn ScalarTestFn::power(int k) {
    if (k < 0) throw InvalidInput("power: exponent must be nonnegative");
    return {Kind::Power, 0, 0, k, 0};
}

ScalarTestFn ScalarTestFn::mollified(const ScalarTestFn& base, double lambda) {
    if (lambda <= 0) throw InvalidInput("mollified: lambda must be positive");
    switch (base.kind_) {
        case Kind::Chop:
            return {Kind::MollifiedChop, 0, 0, 1, lambda};
        case Kind::Hinge:
            return {Kind::MollifiedHinge, 0, 0, 1, lambda};
        case Kind::Ramp:
            return {Kind::MollifiedRamp, base.r_, base.s_, 1, lambda};
        default:
            throw InvalidInput("mollified: base must be chop, hinge or ramp");
    }
}

bool ScalarTestFn::smooth() const {
    return kind_ == Kind::MollifiedChop || kind_ == Kind::MollifiedHinge ||
           kind_ == Kind::MollifiedRamp || kind_ == Kind::Power;
}

double ScalarTestFn::operator()(double t) const {
    switch (kind_) {
        case Kind::Chop:
            return t > 1 ? 1.0 : (t < -1 ? -1.0 : t);
        case Kind::Hinge:
            return relu(std::abs(t) - 1.0);
        case Kind::Ramp:
            if (t <= r_ - s_) return 0.0;
            if (t >= r_ + s_) return 1.0;
            return (s_ - r_ + t) / (2.0 * s_);
        case Kind::Power: {
            double v = 1.0;
            for (int i = 0; i < k_; ++i) v *= t;
            return v;
        }
        case Kind::MollifiedChop:
            return t - srelu(t - 1.0, lambda_) + srelu(-1.0 - t, lambda_);
        case Kind::MollifiedHinge:
            return srelu(t - 1.0, lambda_) + srelu(-t - 1.0, lambda_);
        case Kind::MollifiedRamp:
            return (srelu(t - (r_ - s_), lambda_) - srelu(t - (r_ + s_), lambda_)) / (2.0 * s_);
    }
    return 0.0;
}

double ScalarTestFn::d1(double t) const {
    switch (kind_) {
        case Kind::Power: {
            double v = k_;
            for (int i = 0; i < k_ - 1; ++i) v *= t;
            return k_ == 0 ? 0.0 : v;
        }
        case Kind::MollifiedChop:
            return 1.0 - srelu1(t - 1.0, lambda_) - srelu1(-1.0 - t, lambda_);
        case Kind::MollifiedHinge:
            return srelu1(t - 1.0, lambda_) - srelu1(-t - 1.0, lambda_);
        case Kind::MollifiedRamp:
            return (srelu1(t - (r_ - s_), lambda_) - srelu1(t - (r_ + s_), lambda_)) / (2.0 * s_);
        default:
            throw InvalidInput("derivative only defined for smooth test functions");
    }
}

double ScalarTestFn::d2(double t) const {
    switch (kind_) {
        case Kind::Power: {
            if (k_ < 2) return 0.0;
            double v = static_cast<double>(k_) * (k_ - 1);
            for (int i = 0; i < k_ - 2; ++i) v *= t;
            return v;
        }
        case Kind::MollifiedChop:
            return -srelu2(t - 1.0, lambda_) + srelu2(-1.0 - t, lambda_);
        case Kind::MollifiedHinge:
            return srelu2(t - 1.0, lambda_) + srelu2(-t - 1.0, lambda_);
        case Kind::MollifiedRamp:
            return (srelu2(t - (r_ - s_), lambda_) - srelu2(t - (r_ + s_), lambda_)) / (2.0 * s_);
        default:
            throw InvalidInput("derivative only defined for smooth test functions");
    }
}

double ScalarTestFn::d3(double t) const {
    switch (kind_) {
        case Kind::Power: {
            if (k_ < 3) return 0.0;
            double v = static_cast<double>(k_) * (k_ - 1) * (k_ - 2);
            for (int i = 0; i < k_ - 3; ++i) v *= t;
            return v;
        }
        case Kind::MollifiedChop:
            return -srelu3(t - 1.0, lambda_) - srelu3(-1.0 - t, lambda_);
        case Kind::MollifiedHinge:
            return srelu3(t - 1.0, lambda_) - srelu3(-t - 1.0, lambda_);
        case Kind::MollifiedRamp:
            return (srelu3(t - (r_ - s_), lambda_) - srelu3(t - (r_ + s_), lambda_)) / (2.0 * s_);
        default:
            throw InvalidInput("derivative only defined for smooth test functions");
    }
}

bool all_finite(const Matrix& a) {
    return a.allFinite();
}

double op_norm(const Matrix& a) {
    if (!all_finite(a)) throw InvalidInput("op_norm: non-finite entries");
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

std::vector<double> singular_values(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix abs_matrix(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("abs_matrix: matrix must be square");
    if (!all_finite(a)) throw InvalidInput("abs_matrix: non-finite entries");
    Matrix g = a * a.adjoint();
    g = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix spectral_apply(const ScalarTestFn& f, const Matrix& a, double herm_tol) {
    if (a.rows() != a.cols()) throw InvalidInput("spectral_apply: matrix must be square");
    if (!all_finite(a)) throw InvalidInput("spectral_apply: non-finite entries");
    if (!is_hermitian(a, herm_tol)) throw InvalidInput("spectral_apply: matrix is not Hermitian");
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = f(ev(i));
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix chop_general(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("chop_general: matrix must be square");
    if (!all_finite(a)) throw InvalidInput("chop_general: non-finite entries");
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd s = svd.singularValues().cwiseMin(1.0);
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

Matrix embed_iota(const Matrix& a, int p) {
    if (a.rows() != a.cols()) throw InvalidInput("embed_iota: matrix must be square");
    if (p < a.rows()) throw InvalidInput("embed_iota: target dimension smaller than input");
    Matrix out = Matrix::Zero(p, p);
    out.topLeftCorner(a.rows(), a.cols()) = a;
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {
int side_of_square(const Matrix& x, const char* who) {
    if (x.rows() != x.cols()) throw InvalidInput(std::string(who) + ": matrix must be square");
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(x.rows()))));
    if (static_cast<Eigen::Index>(n) * n != x.rows())
        throw InvalidInput(std::string(who) + ": size is not a perfect square");
    return n;
}
}  // namespace

Matrix partial_trace_2(const Matrix& x) {
    const int n = side_of_square(x, "partial_trace_2");
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < n; ++k) acc += x(i * n + k, j * n + k);
            out(i, j) = acc;
        }
    return out;
}

Matrix partial_trace_1(const Matrix& x) {
    const int n = side_of_square(x, "partial_trace_1");
    Matrix out = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Complex acc = 0.0;
            for (int i = 0; i < n; ++i) acc += x(i * n + k, i * n + l);
            out(k, l) = acc;
        }
    return out;
}

Matrix odot(const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
    if (u.empty() || u.size() != v.size()) throw InvalidInput("odot: component count mismatch");
    const Eigen::Index n = u[0].rows();
    for (const auto& c : u)
        if (c.rows() != n || c.cols() != n) throw InvalidInput("odot: component shape mismatch");
    for (const auto& c : v)
        if (c.rows() != n || c.cols() != n) throw InvalidInput("odot: component shape mismatch");
    Matrix out = Matrix::Zero(n * n, n * n);
    for (std::size_t a = 0; a < u.size(); ++a) out += kron(u[a], v[a].conjugate());
    return out;
}

Matrix polar_maximizer(const Matrix& c) {
    // argmax over {X : X X* = I} of Re Tr(C X) is V U* for C = U S V*
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixV() * svd.matrixU().adjoint();
}

double nuclear_norm(const Matrix& c) {
    Eigen::JacobiSVD<Matrix> svd(c);
    return svd.singularValues().sum();
}

Tensor4 Tensor4::from_matrix(Matrix m) {
    Tensor4 t;
    t.n = side_of_square(m, "Tensor4");
    t.matrix = std::move(m);
    t.validate();
    return t;
}

Tensor4 Tensor4::from_factors(std::vector<Matrix> factors) {
    if (factors.empty()) throw InvalidInput("Tensor4: empty factor list");
    const Eigen::Index n = factors[0].rows();
    for (const auto& f : factors)
        if (f.rows() != n || f.cols() != n) throw InvalidInput("Tensor4: factor shape mismatch");
    Tensor4 t;
    t.n = static_cast<int>(n);
    t.matrix = Matrix::Zero(n * n, n * n);
    for (const auto& f : factors) t.matrix += kron(f, f.conjugate());
    t.psd_factors = std::move(factors);
    return t;
}

void Tensor4::validate() const {
    if (!all_finite(matrix)) throw InvalidInput("Tensor4: non-finite entries");
    if (matrix.rows() != static_cast<Eigen::Index>(n) * n)
        throw InvalidInput("Tensor4: matrix dimension does not equal n^2");
    if (psd_factors) {
        Matrix rebuilt = Matrix::Zero(matrix.rows(), matrix.cols());
        for (const auto& f : *psd_factors) rebuilt += kron(f, f.conjugate());
        if ((rebuilt - matrix).cwiseAbs().maxCoeff() > 1e-10)
            throw InvalidInput("Tensor4: factors do not reproduce the matrix");
    }
}

Tensor4 embed_iota_tensor(const Tensor4& t, int p) {
    if (p < t.n) throw InvalidInput("embed_iota_tensor: target dimension smaller than input");
    if (!t.psd_factors)
        throw UnsupportedInput("embed_iota_tensor: requires a factorization");
    std::vector<Matrix> factors;
    factors.reserve(t.psd_factors->size());
    for (const auto& f : *t.psd_factors) factors.push_back(embed_iota(f, p));
    return Tensor4::from_factors(std::move(factors));
}

}  // namespace ncmaj
