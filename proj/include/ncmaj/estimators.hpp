#pragma once

#include <optional>

#include "ncmaj/ensembles.hpp"
#include "ncmaj/ncpoly.hpp"

namespace ncmaj {

// The cyclic counterexample reports an unnormalized trace while the
// majorization statements use (1/n) Tr; every trace estimator takes a flag.
enum class TraceNorm { Normalized, Unnormalized };

// Mode A applies the test function to |Q|^2; mode B evaluates
// Tr (max(0, |Q| - 1))^2 directly on the singular values.
enum class PsiMode { OfSquare, HingeOfAbs };

// Exact 2^{-m} sum_sigma Tr |Q(sigma)|^{2K}, enumeration over all sign
// patterns (m <= 20).
double trace_moment_boolean_exact(const NCPoly& q, int K, TraceNorm norm = TraceNorm::Normalized);

// Exact Boolean expectation of the psi-trace.
double psi_trace_boolean_exact(const NCPoly& q, const ScalarTestFn& test, PsiMode mode,
                               TraceNorm norm = TraceNorm::Normalized);

// E Tr |Q(b)|^2 = sum_S Tr(Q_hat(S) Q_hat(S)*) via Plancherel.
double boolean_second_moment(const NCPoly& q, TraceNorm norm = TraceNorm::Normalized);

// max_sigma ||Q(sigma)|| by enumeration.
double boolean_max_opnorm(const NCPoly& q);

// Monte Carlo moment of Q under per-variable ensembles. `specs` holds either
// one entry (i.i.d.) or one entry per variable; embedded polynomials expect
// embed_rotate (or haar) specs matching n_var.
MCEstimate trace_moment_mc(const NCPoly& q, const std::vector<EnsembleSpec>& specs, int K,
                           long long samples, RngStream rng,
                           TraceNorm norm = TraceNorm::Normalized, int workers = 0);

MCEstimate psi_trace_mc(const NCPoly& q, const std::vector<EnsembleSpec>& specs,
                        const ScalarTestFn& test, PsiMode mode, long long samples,
                        RngStream rng, int workers = 0);

// (1/n) sum_S rho^{2|S|} Tr |f_hat(S)|^2
double noise_stability_exact(const CubeFunction& f, double rho);

// (1/n) E Tr |T_rho Q^iota{G_i H_i} - Chop T_rho Q^iota{G_i H_i}|^2 under
// embed_rotate(inner, p); requires max_sigma ||f(sigma)|| <= 1. The inner
// ensemble defaults to wigner_gue(f.n).
MCEstimate chop_distance_mc(const CubeFunction& f, double rho, int p, long long samples,
                            RngStream rng, int workers = 0,
                            const std::optional<EnsembleSpec>& inner = std::nullopt);

// (1/n) E Tr |Chop T_rho Q^iota{G_i H_i}|^2 and (1/n) E Tr Chop T_rho Q^iota,
// from the same draws.
struct ChopStability {
    MCEstimate squared_norm;
    MCEstimate trace;
};
ChopStability chop_stability_mc(const CubeFunction& f, double rho, int p, long long samples,
                                RngStream rng, int workers = 0,
                                const std::optional<EnsembleSpec>& inner = std::nullopt);

// Empirical exceedance table P(||Q{...}|| > t); Boolean side exact when
// m <= 20.
struct CdfResult {
    std::vector<double> thresholds;
    std::vector<double> boolean_exceed;
    std::vector<double> mc_exceed;
    std::vector<double> mc_stderr;
    long long samples = 0;
};
CdfResult opnorm_cdf(const NCPoly& q, const std::vector<EnsembleSpec>& specs,
                     const std::vector<double>& thresholds, long long samples, RngStream rng,
                     int workers = 0);

// Per-variable sampling plan shared by the Monte Carlo estimators. Base draws
// happen before any rotation draws so that runs at different p consume the
// same base randomness (common random numbers across a p sweep).
struct InputPlan {
    int m = 0;
    int n_var = 0;
    std::vector<EnsembleSpec> specs;

    static InputPlan make(const NCPoly& q, const std::vector<EnsembleSpec>& specs);
    std::vector<BlockInput> draw(Rng& rng) const;
};

}  // namespace ncmaj
