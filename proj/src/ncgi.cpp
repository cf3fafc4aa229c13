#include "ncmaj/ncgi.hpp"

namespace ncmaj {

VectorUnitary VectorUnitary::from_components(std::vector<Matrix> components, double tol) {
    if (components.empty()) throw InvalidInput("VectorUnitary: empty component list");
    const Eigen::Index n = components[0].rows();
    Matrix left = Matrix::Zero(n, n);
    Matrix right = Matrix::Zero(n, n);
    for (const auto& c : components) {
        if (c.rows() != n || c.cols() != n)
            throw InvalidInput("VectorUnitary: component shape mismatch");
        left += c * c.adjoint();
        right += c.adjoint() * c;
    }
    const Matrix id = Matrix::Identity(n, n);
    if ((left - id).cwiseAbs().maxCoeff() > tol || (right - id).cwiseAbs().maxCoeff() > tol)
        throw InvalidInput("VectorUnitary: components must satisfy sum VV* = sum V*V = I");
    VectorUnitary v;
    v.n = static_cast<int>(n);
    v.N = static_cast<int>(components.size());
    v.components = std::move(components);
    return v;
}

VectorUnitary VectorUnitary::embedded(const Matrix& x, int N) {
    if (N < 1) throw InvalidInput("VectorUnitary: N must be positive");
    std::vector<Matrix> comps;
    comps.reserve(static_cast<std::size_t>(N));
    comps.push_back(x);
    for (int a = 1; a < N; ++a) comps.push_back(Matrix::Zero(x.rows(), x.cols()));
    return from_components(std::move(comps));
}

Matrix VectorUnitary::odot_self() const {
    return odot(components, components);
}

Tensor4 build_psd_tensor(const std::vector<Matrix>& factors) {
    if (factors.empty())
        throw InvalidInput("build_psd_tensor: empty factor list; use zero_psd_tensor(n)");
    return Tensor4::from_factors(factors);
}

Tensor4 zero_psd_tensor(int n) {
    Tensor4 t;
    t.n = n;
    t.matrix = Matrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    t.psd_factors = std::vector<Matrix>{};
    return t;
}

double ncgi_objective(const Tensor4& m, const Matrix& x, const Matrix& y) {
    return (m.matrix * kron(x, y.conjugate())).trace().real();
}

double ncgi_symmetric_objective(const Tensor4& m, const Matrix& x) {
    if (!m.psd_factors) throw InvalidInput("ncgi_symmetric_objective: factorization required");
    double acc = 0.0;
    for (const auto& f : *m.psd_factors) acc += std::norm((f * x).trace());
    return acc;
}

Matrix unitary_polar_factor(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

namespace {

// Linear coefficient of X in Re Tr(M (X (x) conj(Y))): C_X = Tr_2(M (I (x) conj(Y)))
Matrix x_coefficient(const Tensor4& m, const Matrix& y) {
    const Matrix id = Matrix::Identity(m.n, m.n);
    return partial_trace_2(m.matrix * kron(id, y.conjugate()));
}

// Linear coefficient of Y: maximize Re Tr(C_Y Y) with C_Y = conj(Tr_1(M (X (x) I)))
Matrix y_coefficient(const Tensor4& m, const Matrix& x) {
    const Matrix id = Matrix::Identity(m.n, m.n);
    return partial_trace_1(m.matrix * kron(x, id)).conjugate();
}

struct SweepState {
    double value = 0.0;
    bool monotone = true;
    int stall = 0;
};

bool converged_step(SweepState& st, double next, double tol) {
    const double gain = next - st.value;
    if (gain < -1e-12 * (1.0 + std::abs(st.value))) st.monotone = false;
    if (std::abs(gain) < tol * (1.0 + std::abs(next)))
        ++st.stall;
    else
        st.stall = 0;
    st.value = next;
    return st.stall >= 3;
}

}  // namespace

AscentResult opt_unitary_ascent(const Tensor4& m, const AscentOptions& opts, RngStream rng,
                                const std::vector<std::pair<Matrix, Matrix>>& extra_inits) {
    m.validate();
    AscentResult best;
    bool have_best = false;

    const int total = opts.restarts + static_cast<int>(extra_inits.size());
    if (total <= 0) throw InvalidInput("opt_unitary_ascent: no starting points");
    for (int r = 0; r < total; ++r) {
        Matrix x, y;
        if (r < static_cast<int>(extra_inits.size())) {
            x = extra_inits[static_cast<std::size_t>(r)].first;
            y = extra_inits[static_cast<std::size_t>(r)].second;
        } else {
            Rng init(RngStream{rng.master_seed, rng.stream_index + static_cast<std::uint64_t>(r)});
            x = haar_unitary_sample(m.n, init);
            y = haar_unitary_sample(m.n, init);
        }

        SweepState st;
        st.value = ncgi_objective(m, x, y);
        bool conv = false;
        int sweeps = 0;
        for (; sweeps < opts.max_iters; ++sweeps) {
            x = polar_maximizer(x_coefficient(m, y));
            y = polar_maximizer(y_coefficient(m, x));
            if (converged_step(st, ncgi_objective(m, x, y), opts.tol)) {
                conv = true;
                break;
            }
        }
        const double val = ncgi_objective(m, x, y);
        if (!have_best || val > best.value) {
            best = AscentResult{val, x, y, conv, st.monotone, sweeps};
            have_best = true;
        } else {
            best.monotone = best.monotone && st.monotone;
        }
    }
    return best;
}

AscentResult opt_symmetric_ascent(const Tensor4& m, const AscentOptions& opts, RngStream rng,
                                  const std::vector<Matrix>& extra_inits) {
    if (!m.psd_factors) throw InvalidInput("opt_symmetric_ascent: factorization required");
    AscentResult best;
    bool have_best = false;

    const int total = opts.restarts + static_cast<int>(extra_inits.size());
    if (total <= 0) throw InvalidInput("opt_symmetric_ascent: no starting points");
    for (int r = 0; r < total; ++r) {
        Matrix x;
        if (r < static_cast<int>(extra_inits.size())) {
            x = extra_inits[static_cast<std::size_t>(r)];
        } else {
            Rng init(RngStream{rng.master_seed, rng.stream_index + static_cast<std::uint64_t>(r)});
            x = haar_unitary_sample(m.n, init);
        }

        SweepState st;
        st.value = ncgi_symmetric_objective(m, x);
        bool conv = false;
        int sweeps = 0;
        for (; sweeps < opts.max_iters; ++sweeps) {
            // majorize-minimize step: maximize the linearization at x
            Matrix c = Matrix::Zero(m.n, m.n);
            for (const auto& f : *m.psd_factors) c += std::conj((f * x).trace()) * f;
            x = polar_maximizer(c);
            if (converged_step(st, ncgi_symmetric_objective(m, x), opts.tol)) {
                conv = true;
                break;
            }
        }
        const double val = ncgi_symmetric_objective(m, x);
        if (!have_best || val > best.value) {
            best = AscentResult{val, x, x, conv, st.monotone, sweeps};
            have_best = true;
        } else {
            best.monotone = best.monotone && st.monotone;
        }
    }
    return best;
}

SymmetricFreeComparison compare_symmetric_free(const Tensor4& m, const AscentOptions& opts,
                                               RngStream rng) {
    SymmetricFreeComparison cmp;
    cmp.free_result = opt_unitary_ascent(m, opts, rng);
    cmp.symmetric_result =
        opt_symmetric_ascent(m, opts, RngStream{rng.master_seed, rng.stream_index + 1000});

    // cross-seed each ascent with the other's solution
    AscentOptions polish = opts;
    polish.restarts = 0;
    const auto sym2 = opt_symmetric_ascent(
        m, polish, rng, {cmp.free_result.x, cmp.free_result.y, cmp.symmetric_result.x});
    if (sym2.value > cmp.symmetric_result.value) cmp.symmetric_result = sym2;

    const auto free2 = opt_unitary_ascent(
        m, polish, rng,
        {{cmp.symmetric_result.x, cmp.symmetric_result.x}, {cmp.free_result.x, cmp.free_result.y}});
    if (free2.value > cmp.free_result.value) cmp.free_result = free2;
    return cmp;
}

VectorAscentResult vector_unitary_ascent(const Tensor4& m, int N, const AscentOptions& opts,
                                         RngStream rng) {
    if (N < 1) throw InvalidInput("vector_unitary_ascent: N must be positive");
    const int n = m.n;
    const Matrix id = Matrix::Identity(n, n);

    // alternating polar normalization onto sum UU* = sum U*U = I
    auto project = [&](std::vector<Matrix> comps) {
        for (int pass = 0; pass < 60; ++pass) {
            Matrix left = Matrix::Zero(n, n);
            for (const auto& c : comps) left += c * c.adjoint();
            Eigen::SelfAdjointEigenSolver<Matrix> esl(0.5 * (left + left.adjoint()));
            const Matrix li =
                esl.eigenvectors() *
                esl.eigenvalues().cwiseMax(1e-14).cwiseInverse().cwiseSqrt().asDiagonal() *
                esl.eigenvectors().adjoint();
            for (auto& c : comps) c = li * c;

            Matrix right = Matrix::Zero(n, n);
            for (const auto& c : comps) right += c.adjoint() * c;
            Eigen::SelfAdjointEigenSolver<Matrix> esr(0.5 * (right + right.adjoint()));
            const Matrix ri =
                esr.eigenvectors() *
                esr.eigenvalues().cwiseMax(1e-14).cwiseInverse().cwiseSqrt().asDiagonal() *
                esr.eigenvectors().adjoint();
            for (auto& c : comps) c = c * ri;

            Matrix l2 = Matrix::Zero(n, n);
            Matrix r2 = Matrix::Zero(n, n);
            for (const auto& c : comps) {
                l2 += c * c.adjoint();
                r2 += c.adjoint() * c;
            }
            if ((l2 - id).cwiseAbs().maxCoeff() < 1e-10 &&
                (r2 - id).cwiseAbs().maxCoeff() < 1e-10)
                break;
        }
        return comps;
    };

    auto objective = [&](const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
        double acc = 0.0;
        for (int a = 0; a < N; ++a)
            acc += (m.matrix * kron(u[static_cast<std::size_t>(a)],
                                    v[static_cast<std::size_t>(a)].conjugate()))
                       .trace()
                       .real();
        return acc;
    };

    VectorAscentResult best;
    bool have_best = false;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        Rng init(RngStream{rng.master_seed, rng.stream_index + 5000 + static_cast<std::uint64_t>(r)});
        std::vector<Matrix> u, v;
        for (int a = 0; a < N; ++a) {
            u.push_back(ginibre(n, n, init));
            v.push_back(ginibre(n, n, init));
        }
        u = project(std::move(u));
        v = project(std::move(v));

        double val = objective(u, v);
        double step = 0.5;
        for (int it = 0; it < opts.max_iters; ++it) {
            // gradient in U for fixed V, then projected ascent step
            std::vector<Matrix> gu(static_cast<std::size_t>(N));
            for (int a = 0; a < N; ++a)
                gu[static_cast<std::size_t>(a)] =
                    partial_trace_2(m.matrix *
                                    kron(id, v[static_cast<std::size_t>(a)].conjugate()))
                        .adjoint();
            std::vector<Matrix> cand = u;
            for (int a = 0; a < N; ++a)
                cand[static_cast<std::size_t>(a)] += step * gu[static_cast<std::size_t>(a)];
            cand = project(std::move(cand));

            // gradient in V for the candidate U
            std::vector<Matrix> gv(static_cast<std::size_t>(N));
            for (int a = 0; a < N; ++a)
                gv[static_cast<std::size_t>(a)] =
                    partial_trace_1(m.matrix * kron(cand[static_cast<std::size_t>(a)], id))
                        .conjugate()
                        .adjoint();
            std::vector<Matrix> candv = v;
            for (int a = 0; a < N; ++a)
                candv[static_cast<std::size_t>(a)] += step * gv[static_cast<std::size_t>(a)];
            candv = project(std::move(candv));

            const double next = objective(cand, candv);
            if (next > val + 1e-14) {
                u = std::move(cand);
                v = std::move(candv);
                val = next;
            } else {
                step *= 0.5;
                if (step < 1e-8) break;
            }
        }
        if (!have_best || val > best.value) {
            best.value = val;
            best.u = VectorUnitary::from_components(u, 1e-6);
            best.v = VectorUnitary::from_components(v, 1e-6);
            have_best = true;
        }
    }
    return best;
}

CubeFunction bnd_operator(const CubeFunction& h, const Tensor4& m, const VectorUnitary& v) {
    if (h.n != m.n || v.n != m.n) throw InvalidInput("bnd_operator: dimension mismatch");
    const Matrix w = v.odot_self();
    const Matrix id = Matrix::Identity(h.n, h.n);
    CubeFunction out(h.m, h.n);
    for (int i = 1; i <= h.m; ++i) {
        const std::uint32_t mask = 1u << (i - 1);
        auto it = h.coeffs.find(mask);
        if (it == h.coeffs.end()) continue;
        Matrix b = partial_trace_2(w * m.matrix * kron(id, it->second.conjugate()));
        out.coeffs[mask] = std::move(b);
    }
    return out;
}

DictObjective obj_dict_test_routes(const CubeFunction& f, const CubeFunction& h, const Tensor4& m,
                                   const VectorUnitary& v) {
    if (f.m != h.m || f.n != h.n) throw InvalidInput("obj_dict_test: f and h shape mismatch");
    if (f.n != m.n || v.n != m.n) throw InvalidInput("obj_dict_test: dimension mismatch");

    const Matrix w = v.odot_self();
    DictObjective out{0.0, 0.0};

    for (int i = 1; i <= f.m; ++i) {
        const std::uint32_t mask = 1u << (i - 1);
        auto fit = f.coeffs.find(mask);
        auto hit = h.coeffs.find(mask);
        if (fit == f.coeffs.end() || hit == h.coeffs.end()) continue;
        out.fourier_route += (w * m.matrix * kron(fit->second, hit->second.conjugate())).trace();
    }

    // pointwise route through the B(h) operator
    const CubeFunction b = bnd_operator(h, m, v);
    const std::uint32_t total = 1u << f.m;
    Complex acc = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx)
        acc += (inverse_transform(f, idx) * inverse_transform(b, idx)).trace();
    out.operator_route = acc / static_cast<double>(total);
    return out;
}

double obj_dict_test(const CubeFunction& f, const CubeFunction& h, const Tensor4& m,
                     const VectorUnitary& v, double route_tol) {
    const DictObjective routes = obj_dict_test_routes(f, h, m, v);
    const double scale = 1.0 + std::abs(routes.fourier_route);
    if (std::abs(routes.fourier_route - routes.operator_route) > route_tol * scale)
        throw InvalidInput("obj_dict_test: evaluation routes disagree");
    return routes.fourier_route.real();
}

CtauReport ctau_search(const Tensor4& m, const VectorUnitary& v, double tau, int m_vars,
                       const AscentOptions& opts, RngStream rng, double eps) {
    if (tau <= 0.0) throw InvalidInput("ctau_search: tau must be positive");
    if (m_vars < 1 || m_vars > 16) throw InvalidInput("ctau_search: variable count out of range");
    const int n = m.n;
    const Matrix w = v.odot_self();

    // Hermitian form of the level-1 objective: q(A) = Tr(W M (A (x) conj(A)))
    auto q_of = [&](const Matrix& a) {
        return (w * m.matrix * kron(a, a.conjugate())).trace().real();
    };

    // top direction of the form, via the matrix-unit basis
    const int nn = n * n;
    Matrix form(nn, nn);
    for (int al = 0; al < nn; ++al) {
        Matrix ea = Matrix::Zero(n, n);
        ea(al / n, al % n) = 1.0;
        for (int be = 0; be < nn; ++be) {
            Matrix eb = Matrix::Zero(n, n);
            eb(be / n, be % n) = 1.0;
            form(al, be) = (w * m.matrix * kron(ea, eb.conjugate())).trace();
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (form + form.adjoint()));
    Matrix top = Matrix::Zero(n, n);
    {
        const Eigen::VectorXcd vec = es.eigenvectors().col(nn - 1);
        for (int al = 0; al < nn; ++al) top(al / n, al % n) = vec(al);
    }

    const double completeness = (w * m.matrix).trace().real();
    const AscentResult opt = opt_unitary_ascent(m, opts, rng);

    CtauReport rep;
    rep.completeness = completeness;
    rep.opt_value = opt.value;
    rep.soundness_rhs = (1.0 + eps) * opt.value;
    rep.tau = tau;

    Rng dir_rng(RngStream{rng.master_seed, rng.stream_index + 9000});
    std::vector<Matrix> directions = {Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)),
                                      top / std::max(top.norm(), 1e-15)};
    for (int extra = 0; extra < 4; ++extra) {
        Matrix g = ginibre(n, n, dir_rng);
        directions.push_back(g / g.norm());
    }

    double best = 0.0;
    int best_support = 0;
    for (const Matrix& dir : directions) {
        for (int k = 1; k <= m_vars; ++k) {
            // k identical level-1 coefficients c * dir, influence and norm capped
            CubeFunction f(m_vars, n);
            for (int i = 0; i < k; ++i) f.coeffs[1u << i] = dir;
            const double worst = max_pointwise_norm(f);
            const double c = std::min(std::sqrt(tau) / dir.norm(),
                                      worst > 0 ? 1.0 / worst : 1.0);
            const double val = static_cast<double>(k) * c * c * q_of(dir);
            if (val > best) {
                best = val;
                best_support = k;
            }
        }
    }

    // local refinement around the best same-direction candidate
    {
        Matrix dir = directions[1];
        double cur = 0.0;
        int k = std::max(1, best_support);
        auto eval_dir = [&](const Matrix& d) {
            CubeFunction f(m_vars, n);
            for (int i = 0; i < k; ++i) f.coeffs[1u << i] = d;
            const double worst = max_pointwise_norm(f);
            const double c =
                std::min(std::sqrt(tau) / d.norm(), worst > 0 ? 1.0 / worst : 1.0);
            return static_cast<double>(k) * c * c * q_of(d);
        };
        cur = eval_dir(dir);
        for (int it = 0; it < 200; ++it) {
            Matrix cand = dir + 0.1 * ginibre(n, n, dir_rng);
            cand /= cand.norm();
            const double val = eval_dir(cand);
            if (val > cur) {
                cur = val;
                dir = cand;
            }
        }
        if (cur > best) best = cur;
    }

    rep.lower_bound = best;
    rep.best_support = best_support;
    return rep;
}

PsdBlockInstance PsdBlockInstance::from_matrix(int n, int d, Matrix m, double tol) {
    if (n < 1 || d < 1) throw InvalidInput("PsdBlockInstance: block counts must be positive");
    if (m.rows() != static_cast<Eigen::Index>(n) * d || m.cols() != m.rows())
        throw InvalidInput("PsdBlockInstance: matrix must be nd x nd");
    if (!is_hermitian(m, 1e-8)) throw InvalidInput("PsdBlockInstance: matrix must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const double minev = es.eigenvalues().minCoeff();
    const double scale = std::max(1.0, std::abs(es.eigenvalues().maxCoeff()));
    if (minev < -tol * scale) throw InvalidInput("PsdBlockInstance: matrix is not PSD");
    PsdBlockInstance inst;
    inst.n = n;
    inst.d = d;
    inst.m = std::move(m);
    return inst;
}

PsdBlockInstance PsdBlockInstance::random(int n, int d, Rng& rng) {
    const int nd = n * d;
    const Matrix a = ginibre(nd, nd, rng);
    Matrix m = a * a.adjoint() / static_cast<double>(nd);
    return from_matrix(n, d, std::move(m));
}

Matrix PsdBlockInstance::block(int i, int j) const {
    return m.block(static_cast<Eigen::Index>(d) * i, static_cast<Eigen::Index>(d) * j, d, d);
}

double psd_objective(const PsdBlockInstance& inst, const std::vector<Matrix>& tuple) {
    if (static_cast<int>(tuple.size()) != inst.n)
        throw InvalidInput("psd_objective: tuple size mismatch");
    Complex acc = 0.0;
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
            acc += (inst.block(i, j).transpose() * tuple[static_cast<std::size_t>(i)] *
                    tuple[static_cast<std::size_t>(j)].adjoint())
                       .trace();
    return acc.real();
}

PsdVariantResult psd_variant_solve(const PsdBlockInstance& inst, bool constrained,
                                   const AscentOptions& opts, RngStream rng,
                                   const std::vector<std::vector<Matrix>>& extra_inits) {
    const int n = inst.n;
    const int d = inst.d;
    const int width = constrained ? d : d * n;

    PsdVariantResult best;
    bool have_best = false;
    const int total = opts.restarts + static_cast<int>(extra_inits.size());
    if (total <= 0) throw InvalidInput("psd_variant_solve: no starting points");
    for (int r = 0; r < total; ++r) {
        std::vector<Matrix> tuple;
        if (r < static_cast<int>(extra_inits.size())) {
            tuple = extra_inits[static_cast<std::size_t>(r)];
            if (static_cast<int>(tuple.size()) != n)
                throw InvalidInput("psd_variant_solve: initial tuple size mismatch");
        } else {
            Rng init(RngStream{rng.master_seed, rng.stream_index + static_cast<std::uint64_t>(r)});
            for (int i = 0; i < n; ++i)
                tuple.push_back(constrained ? haar_unitary_sample(d, init)
                                            : stiefel_rows_sample(d, width, init));
        }

        SweepState st;
        st.value = psd_objective(inst, tuple);
        bool conv = false;
        for (int sweep = 0; sweep < opts.max_iters; ++sweep) {
            for (int i = 0; i < n; ++i) {
                // linear coefficient of X_i; the diagonal term is constant on
                // the feasible set
                Matrix c = Matrix::Zero(width, d);
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    c += tuple[static_cast<std::size_t>(j)].adjoint() *
                         inst.block(i, j).transpose();
                }
                tuple[static_cast<std::size_t>(i)] = polar_maximizer(c);
            }
            if (converged_step(st, psd_objective(inst, tuple), opts.tol)) {
                conv = true;
                break;
            }
        }
        const double val = psd_objective(inst, tuple);
        if (!have_best || val > best.value) {
            best = PsdVariantResult{val, tuple, conv, st.monotone};
            have_best = true;
        } else {
            best.monotone = best.monotone && st.monotone;
        }
    }
    return best;
}

std::vector<Matrix> round_relaxation(const std::vector<Matrix>& relaxed, Rng& rng) {
    if (relaxed.empty()) throw InvalidInput("round_relaxation: empty tuple");
    const int d = static_cast<int>(relaxed[0].rows());
    const int dn = static_cast<int>(relaxed[0].cols());
    for (const auto& v : relaxed)
        if (v.rows() != d || v.cols() != dn)
            throw InvalidInput("round_relaxation: tuple shape mismatch");

    for (int attempt = 0; attempt < 50; ++attempt) {
        const Matrix r = ginibre(dn, d, rng);
        std::vector<Matrix> rounded;
        rounded.reserve(relaxed.size());
        bool ok = true;
        for (const auto& v : relaxed) {
            const Matrix a = v * r;
            Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) <= 1e-12 * std::max(sv(0), 1e-300)) {
                ok = false;
                break;
            }
            rounded.push_back(svd.matrixU() * svd.matrixV().adjoint());
        }
        if (ok) return rounded;
    }
    throw UnsupportedInput("round_relaxation: persistent rank deficiency in V_i R");
}

MCEstimate estimate_Kd(int d, long long samples, RngStream rng, int workers) {
    if (d < 1) throw InvalidInput("estimate_Kd: d must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    auto fn = [d, scale](Rng& r) -> double {
        Matrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = scale * r.cgaussian();
        Eigen::JacobiSVD<Matrix> svd(g);
        return svd.singularValues().sum() / static_cast<double>(d);
    };
    const MCEstimate root = run_mc("mean_singular_value_sum", samples, rng, fn, workers);
    MCEstimate est;
    est.mean = root.mean * root.mean;
    est.stderr_ = 2.0 * std::abs(root.mean) * root.stderr_;
    est.samples = root.samples;
    est.master_seed = rng.master_seed;
    est.label = "K(" + std::to_string(d) + ")";
    return est;
}

}  // namespace ncmaj
