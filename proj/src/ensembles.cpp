#include "ncmaj/ensembles.hpp"

namespace ncmaj {

EnsembleSpec EnsembleSpec::rademacher() {
    EnsembleSpec s;
    s.kind = Kind::Rademacher;
    s.dim = 1;
    return s;
}

EnsembleSpec EnsembleSpec::haar_unitary(int p) {
    if (p < 1) throw InvalidInput("haar_unitary: dimension must be positive");
    EnsembleSpec s;
    s.kind = Kind::HaarUnitary;
    s.dim = p;
    return s;
}

EnsembleSpec EnsembleSpec::gaussian_frame(std::vector<Matrix> frame) {
    if (frame.empty()) throw InvalidInput("gaussian_frame: empty frame");
    const Eigen::Index n = frame[0].rows();
    Matrix left = Matrix::Zero(n, n);
    Matrix right = Matrix::Zero(n, n);
    for (const auto& v : frame) {
        if (v.rows() != n || v.cols() != n)
            throw InvalidInput("gaussian_frame: frame matrices must share one square shape");
        left += v * v.adjoint();
        right += v.adjoint() * v;
    }
    const Matrix id = Matrix::Identity(n, n);
    if ((left - id).cwiseAbs().maxCoeff() > 1e-8 || (right - id).cwiseAbs().maxCoeff() > 1e-8)
        throw InvalidInput("gaussian_frame: frame must satisfy sum VV* = sum V*V = I");
    EnsembleSpec s;
    s.kind = Kind::GaussianFrame;
    s.dim = static_cast<int>(n);
    s.frame = std::move(frame);
    return s;
}

EnsembleSpec EnsembleSpec::wigner_gue(int n) {
    if (n < 1) throw InvalidInput("wigner_gue: dimension must be positive");
    EnsembleSpec s;
    s.kind = Kind::WignerGue;
    s.dim = n;
    return s;
}

EnsembleSpec EnsembleSpec::embed_rotate(EnsembleSpec inner, int p) {
    if (inner.kind == Kind::Rademacher)
        throw InvalidInput("embed_rotate: inner ensemble must be matrix-valued");
    if (p < inner.dim) throw InvalidInput("embed_rotate: p must be at least the inner dimension");
    EnsembleSpec s;
    s.kind = Kind::EmbedRotate;
    s.dim = p;
    s.inner = std::make_shared<EnsembleSpec>(std::move(inner));
    return s;
}

std::string EnsembleSpec::kind_name() const {
    switch (kind) {
        case Kind::Rademacher: return "rademacher";
        case Kind::HaarUnitary: return "haar_unitary";
        case Kind::GaussianFrame: return "gaussian_frame";
        case Kind::WignerGue: return "wigner_gue";
        case Kind::EmbedRotate: return "embed_rotate";
    }
    return "unknown";
}

Matrix ginibre(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
    return g;
}

Matrix haar_unitary_sample(int p, Rng& rng) {
    const Matrix a = ginibre(p, p, rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < p; ++j) {
        const Complex d = r(j, j);
        const double ad = std::abs(d);
        q.col(j) *= ad > 0 ? d / ad : Complex(1.0, 0.0);
    }
    return q;
}

Matrix stiefel_rows_sample(int n, int p, Rng& rng) {
    if (n > p) throw InvalidInput("stiefel_rows_sample: n must not exceed p");
    // columns of Q from QR of a p x n Ginibre matrix are a uniform
    // orthonormal n-frame; its adjoint is the first-n-rows marginal of Haar
    const Matrix a = ginibre(p, n, rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(p, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double ad = std::abs(d);
        q.col(j) *= ad > 0 ? d / ad : Complex(1.0, 0.0);
    }
    return q.adjoint();
}

Matrix sample(const EnsembleSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case EnsembleSpec::Kind::Rademacher: {
            Matrix b(1, 1);
            b(0, 0) = static_cast<double>(rng.sign());
            return b;
        }
        case EnsembleSpec::Kind::HaarUnitary:
            return haar_unitary_sample(spec.dim, rng);
        case EnsembleSpec::Kind::GaussianFrame: {
            Matrix g = Matrix::Zero(spec.dim, spec.dim);
            for (const auto& v : spec.frame) g += rng.cgaussian() * v;
            return g;
        }
        case EnsembleSpec::Kind::WignerGue: {
            // frame over the scaled matrix-unit basis, drawn entrywise in
            // the same row-major order the frame sum would use
            const double scale = 1.0 / std::sqrt(static_cast<double>(spec.dim));
            Matrix g(spec.dim, spec.dim);
            for (int i = 0; i < spec.dim; ++i)
                for (int j = 0; j < spec.dim; ++j) g(i, j) = scale * rng.cgaussian();
            return g;
        }
        case EnsembleSpec::Kind::EmbedRotate: {
            const Matrix g = sample(*spec.inner, rng);
            const Matrix h = haar_unitary_sample(spec.dim, rng);
            return embed_iota(g, spec.dim) * h;
        }
    }
    throw InvalidInput("sample: unknown ensemble kind");
}

MCEstimate check_moment_bound(const EnsembleSpec& spec, int K, long long samples,
                              RngStream rng, int workers) {
    if (K < 1) throw InvalidInput("check_moment_bound: K must be at least 1");
    const int n = spec.dim;
    auto draw = [&spec, K, n](Rng& r) -> Matrix {
        const Matrix g = sample(spec, r);
        Matrix w = g * g.adjoint();
        Matrix acc = w;
        for (int i = 1; i < K; ++i) acc = acc * w;
        return acc;
    };
    const MatrixMeanResult res = run_mc_matrix(samples, rng, n, n, draw, workers);
    MCEstimate est;
    est.mean = op_norm(res.mean);
    est.stderr_ = res.entry_stderr.norm();
    est.samples = res.samples;
    est.master_seed = rng.master_seed;
    est.label = "opnorm(E(GG*)^" + std::to_string(K) + ") " + spec.kind_name();
    return est;
}

MCEstimate haar_block_damping_check(const Matrix& a, const Matrix& b, int p,
                                    long long samples, RngStream rng, int workers) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw InvalidInput("haar_block_damping_check: A and B must be square");
    if (a.rows() != b.rows()) throw InvalidInput("haar_block_damping_check: dimension mismatch");
    const int n = static_cast<int>(a.rows());
    if (p < n) throw InvalidInput("haar_block_damping_check: p must be at least n");
    auto psd = [](const Matrix& x) {
        if (!is_hermitian(x)) return false;
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()));
        return es.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, op_norm(x));
    };
    if (!psd(a) || !psd(b))
        throw InvalidInput("haar_block_damping_check: A and B must be Hermitian PSD");

    auto fn = [&a, &b, n, p](Rng& r) -> double {
        // iota(A) H iota(B) only sees the top-left n x n block of H
        const Matrix rows = stiefel_rows_sample(n, p, r);
        const Matrix core = a * rows.leftCols(n) * b;
        const double s = op_norm(core);
        return s * s;
    };
    return run_mc("E||iota(A)H iota(B)||^2", samples, rng, fn, workers);
}

}  // namespace ncmaj
