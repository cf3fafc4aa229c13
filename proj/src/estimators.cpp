#include "ncmaj/estimators.hpp"

#include <atomic>
#include <thread>

namespace ncmaj {

namespace {

double apply_norm(double v, int n, TraceNorm norm) {
    return norm == TraceNorm::Normalized ? v / static_cast<double>(n) : v;
}

// Tr (R R*)^K for the top-block value R; the zero rows of the virtual matrix
// contribute nothing to a power trace.
double gram_power_trace(const Matrix& r, int K) {
    const Matrix g = (r * r.adjoint()).eval();
    if (K == 1) return g.real().trace();
    Matrix acc = g;
    for (int i = 1; i < K; ++i) acc = acc * g;
    return acc.real().trace();
}

double psi_value_from_block(const Matrix& r, Eigen::Index virtual_dim, const ScalarTestFn& test,
                            PsiMode mode) {
    Eigen::JacobiSVD<Matrix> svd(r);
    const auto& sv = svd.singularValues();
    double acc = 0.0;
    if (mode == PsiMode::OfSquare) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) acc += test(sv(i) * sv(i));
        acc += static_cast<double>(virtual_dim - sv.size()) * test(0.0);
    } else {
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double h = std::max(0.0, sv(i) - 1.0);
            acc += h * h;
        }
    }
    return acc;
}

double psi_value_hermitian(const Matrix& square, const ScalarTestFn& test, PsiMode mode) {
    Eigen::JacobiSVD<Matrix> svd(square);
    const auto& sv = svd.singularValues();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (mode == PsiMode::OfSquare)
            acc += test(sv(i) * sv(i));
        else {
            const double h = std::max(0.0, sv(i) - 1.0);
            acc += h * h;
        }
    }
    return acc;
}

void check_enum(const NCPoly& q, const char* who) {
    if (q.m > CubeFunction::kMaxEnumVars)
        throw InvalidInput(std::string(who) +
                           ": exact enumeration requires m <= 20; use the Monte Carlo path");
}

}  // namespace

double trace_moment_boolean_exact(const NCPoly& q, int K, TraceNorm norm) {
    check_enum(q, "trace_moment_boolean_exact");
    if (K < 1) throw InvalidInput("trace_moment_boolean_exact: K must be at least 1");
    const std::uint32_t total = 1u << q.m;
    double acc = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx) {
        const Matrix v = evaluate_signs(q, idx);
        acc += gram_power_trace(v, K);
    }
    acc /= static_cast<double>(total);
    return apply_norm(acc, q.n_coeff, norm);
}

double psi_trace_boolean_exact(const NCPoly& q, const ScalarTestFn& test, PsiMode mode,
                               TraceNorm norm) {
    check_enum(q, "psi_trace_boolean_exact");
    const std::uint32_t total = 1u << q.m;
    const Eigen::Index virtual_dim = q.n_var;
    double acc = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx) {
        const Matrix v = evaluate_signs(q, idx);
        double x = psi_value_hermitian(v, test, mode);
        if (mode == PsiMode::OfSquare)
            x += static_cast<double>(virtual_dim - v.rows()) * test(0.0);
        acc += x;
    }
    acc /= static_cast<double>(total);
    return apply_norm(acc, q.n_coeff, norm);
}

double boolean_second_moment(const NCPoly& q, TraceNorm norm) {
    return apply_norm(plancherel_mass(q), q.n_coeff, norm);
}

double boolean_max_opnorm(const NCPoly& q) {
    check_enum(q, "boolean_max_opnorm");
    const std::uint32_t total = 1u << q.m;
    double best = 0.0;
    for (std::uint32_t idx = 0; idx < total; ++idx)
        best = std::max(best, op_norm(evaluate_signs(q, idx)));
    return best;
}

InputPlan InputPlan::make(const NCPoly& q, const std::vector<EnsembleSpec>& specs) {
    if (specs.empty()) throw InvalidInput("InputPlan: at least one ensemble spec required");
    if (specs.size() != 1 && static_cast<int>(specs.size()) != q.m)
        throw InvalidInput("InputPlan: spec count must be 1 or m");
    InputPlan plan;
    plan.m = q.m;
    plan.n_var = q.n_var;
    plan.specs.reserve(static_cast<std::size_t>(q.m));
    for (int i = 0; i < q.m; ++i) {
        const EnsembleSpec& s = specs.size() == 1 ? specs[0] : specs[static_cast<std::size_t>(i)];
        switch (s.kind) {
            case EnsembleSpec::Kind::Rademacher:
                break;
            case EnsembleSpec::Kind::HaarUnitary:
            case EnsembleSpec::Kind::GaussianFrame:
            case EnsembleSpec::Kind::WignerGue:
                if (s.dim != q.n_var)
                    throw InvalidInput("InputPlan: ensemble dimension does not match n_var");
                break;
            case EnsembleSpec::Kind::EmbedRotate:
                if (s.dim != q.n_var)
                    throw InvalidInput(
                        "InputPlan: embed_rotate p does not match n_var; embed the polynomial "
                        "first");
                break;
        }
        plan.specs.push_back(s);
    }
    return plan;
}

std::vector<BlockInput> InputPlan::draw(Rng& rng) const {
    std::vector<BlockInput> inputs(static_cast<std::size_t>(m));
    // base draws first, rotations second: keeps base randomness aligned
    // across runs that differ only in p
    for (int i = 0; i < m; ++i) {
        const EnsembleSpec& s = specs[static_cast<std::size_t>(i)];
        auto& slot = inputs[static_cast<std::size_t>(i)];
        switch (s.kind) {
            case EnsembleSpec::Kind::Rademacher:
                slot = BlockInput::from_scalar(static_cast<double>(rng.sign()));
                break;
            case EnsembleSpec::Kind::HaarUnitary:
                slot = BlockInput::from_block(haar_unitary_sample(s.dim, rng));
                break;
            case EnsembleSpec::Kind::GaussianFrame:
            case EnsembleSpec::Kind::WignerGue:
                slot = BlockInput::from_block(sample(s, rng));
                break;
            case EnsembleSpec::Kind::EmbedRotate:
                slot = BlockInput::from_block(sample(*s.inner, rng));
                break;
        }
    }
    for (int i = 0; i < m; ++i) {
        const EnsembleSpec& s = specs[static_cast<std::size_t>(i)];
        if (s.kind != EnsembleSpec::Kind::EmbedRotate) continue;
        auto& slot = inputs[static_cast<std::size_t>(i)];
        const Matrix rows = stiefel_rows_sample(static_cast<int>(slot.block.rows()), s.dim, rng);
        slot.block = slot.block * rows;
    }
    return inputs;
}

MCEstimate trace_moment_mc(const NCPoly& q, const std::vector<EnsembleSpec>& specs, int K,
                           long long samples, RngStream rng, TraceNorm norm, int workers) {
    if (K < 1) throw InvalidInput("trace_moment_mc: K must be at least 1");
    const InputPlan plan = InputPlan::make(q, specs);
    auto fn = [&q, &plan, K, norm](Rng& r) -> double {
        const Matrix value = evaluate_blocks(q, plan.draw(r));
        return apply_norm(gram_power_trace(value, K), q.n_coeff, norm);
    };
    return run_mc("trace_moment_2K", samples, rng, fn, workers);
}

MCEstimate psi_trace_mc(const NCPoly& q, const std::vector<EnsembleSpec>& specs,
                        const ScalarTestFn& test, PsiMode mode, long long samples, RngStream rng,
                        int workers) {
    const InputPlan plan = InputPlan::make(q, specs);
    auto fn = [&q, &plan, &test, mode](Rng& r) -> double {
        const Matrix value = evaluate_blocks(q, plan.draw(r));
        return psi_value_from_block(value, q.n_var, test, mode) / static_cast<double>(q.n_coeff);
    };
    return run_mc("psi_trace", samples, rng, fn, workers);
}

double noise_stability_exact(const CubeFunction& f, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("noise_stability_exact: rho in [0,1]");
    double acc = 0.0;
    for (const auto& [mask, c] : f.coeffs)
        acc += std::pow(rho, 2 * __builtin_popcount(mask)) * c.squaredNorm();
    return acc / static_cast<double>(f.n);
}

namespace {

NCPoly damped_embedded_poly(const CubeFunction& f, double rho, int p) {
    const CubeFunction damped = apply_Trho(f, rho);
    return embed(from_cube_function(damped), p);
}

EnsembleSpec resolve_inner(const CubeFunction& f, const std::optional<EnsembleSpec>& inner) {
    if (inner) {
        if (inner->kind == EnsembleSpec::Kind::Rademacher ||
            inner->kind == EnsembleSpec::Kind::EmbedRotate)
            throw InvalidInput("chop estimator: inner ensemble must be a plain matrix ensemble");
        if (inner->dim != f.n) throw InvalidInput("chop estimator: inner dimension mismatch");
        return *inner;
    }
    return EnsembleSpec::wigner_gue(f.n);
}

}  // namespace

MCEstimate chop_distance_mc(const CubeFunction& f, double rho, int p, long long samples,
                            RngStream rng, int workers, const std::optional<EnsembleSpec>& inner) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("chop_distance_mc: rho in [0,1]");
    if (max_pointwise_norm(f) > 1.0 + 1e-9)
        throw InvalidInput("chop_distance_mc: requires ||f(sigma)|| <= 1 for all sigma");
    const NCPoly q = damped_embedded_poly(f, rho, p);
    const EnsembleSpec spec = EnsembleSpec::embed_rotate(resolve_inner(f, inner), p);
    const InputPlan plan = InputPlan::make(q, {spec});
    auto fn = [&q, &plan](Rng& r) -> double {
        const Matrix value = evaluate_blocks(q, plan.draw(r));
        Eigen::JacobiSVD<Matrix> svd(value);
        const auto& sv = svd.singularValues();
        double acc = 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double ex = std::max(0.0, sv(i) - 1.0);
            acc += ex * ex;
        }
        return acc / static_cast<double>(q.n_coeff);
    };
    return run_mc("chop_distance", samples, rng, fn, workers);
}

ChopStability chop_stability_mc(const CubeFunction& f, double rho, int p, long long samples,
                                RngStream rng, int workers,
                                const std::optional<EnsembleSpec>& inner) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("chop_stability_mc: rho in [0,1]");
    const NCPoly q = damped_embedded_poly(f, rho, p);
    const EnsembleSpec spec = EnsembleSpec::embed_rotate(resolve_inner(f, inner), p);
    const InputPlan plan = InputPlan::make(q, {spec});

    // two passes over the same streams so both statistics see the same draws
    auto chopped_sq = [&q, &plan](Rng& r) -> double {
        const Matrix value = evaluate_blocks(q, plan.draw(r));
        Eigen::JacobiSVD<Matrix> svd(value);
        const auto& sv = svd.singularValues();
        double acc = 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double c = std::min(sv(i), 1.0);
            acc += c * c;
        }
        return acc / static_cast<double>(q.n_coeff);
    };
    auto chopped_tr = [&q, &plan](Rng& r) -> double {
        const Matrix value = evaluate_blocks(q, plan.draw(r));
        Eigen::JacobiSVD<Matrix> svd(value, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::VectorXd sv = svd.singularValues().cwiseMin(1.0);
        const Matrix chopped = svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
        // trace of the virtual p x p matrix: only the first n columns of the
        // top block lie on the diagonal
        double tr = 0.0;
        for (Eigen::Index i = 0; i < chopped.rows(); ++i) tr += chopped(i, i).real();
        return tr / static_cast<double>(q.n_coeff);
    };
    ChopStability out;
    out.squared_norm = run_mc("chop_stability_sq", samples, rng, chopped_sq, workers);
    out.trace = run_mc("chop_trace", samples, rng, chopped_tr, workers);
    return out;
}

CdfResult opnorm_cdf(const NCPoly& q, const std::vector<EnsembleSpec>& specs,
                     const std::vector<double>& thresholds, long long samples, RngStream rng,
                     int workers) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] < thresholds[i - 1])
            throw InvalidInput("opnorm_cdf: threshold grid must be sorted");
    const InputPlan plan = InputPlan::make(q, specs);

    CdfResult out;
    out.thresholds = thresholds;
    out.samples = samples;

    if (q.m <= CubeFunction::kMaxEnumVars) {
        const std::uint32_t total = 1u << q.m;
        std::vector<double> norms(total);
        for (std::uint32_t idx = 0; idx < total; ++idx)
            norms[idx] = op_norm(evaluate_signs(q, idx));
        out.boolean_exceed.resize(thresholds.size(), 0.0);
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            long long c = 0;
            for (const double v : norms)
                if (v > thresholds[t]) ++c;
            out.boolean_exceed[t] = static_cast<double>(c) / static_cast<double>(total);
        }
    }

    // chunked exceedance counts, merged in chunk order
    const long long kChunk = mc_chunk_size(samples);
    const long long chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::vector<long long>> counts(static_cast<std::size_t>(chunks));
    std::atomic<long long> next{0};
    auto work = [&]() {
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= chunks) break;
            const long long lo = c * kChunk;
            const long long hi = std::min(samples, lo + kChunk);
            std::vector<long long> local(thresholds.size(), 0);
            for (long long i = lo; i < hi; ++i) {
                Rng r(RngStream{rng.master_seed,
                                rng.stream_index + static_cast<std::uint64_t>(i)});
                const Matrix value = evaluate_blocks(q, plan.draw(r));
                Eigen::JacobiSVD<Matrix> svd(value);
                const double nrm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
                for (std::size_t t = 0; t < thresholds.size(); ++t)
                    if (nrm > thresholds[t]) ++local[t];
            }
            counts[static_cast<std::size_t>(c)] = std::move(local);
        }
    };
    int nthreads = workers > 0 ? workers : default_workers();
    nthreads = static_cast<int>(std::min<long long>(nthreads, chunks));
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    out.mc_exceed.resize(thresholds.size(), 0.0);
    out.mc_stderr.resize(thresholds.size(), 0.0);
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        long long total_count = 0;
        for (const auto& local : counts)
            if (!local.empty()) total_count += local[t];
        const double phat = static_cast<double>(total_count) / static_cast<double>(samples);
        out.mc_exceed[t] = phat;
        if (samples > 1)
            out.mc_stderr[t] = std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples - 1));
    }
    return out;
}

}  // namespace ncmaj
