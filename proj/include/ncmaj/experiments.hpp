#pragma once

#include <json.hpp>

#include "ncmaj/ncgi.hpp"

namespace ncmaj {

using json = nlohmann::json;

enum class Verdict { Pass, Fail, ReportOnly };

std::string verdict_name(Verdict v);

struct ExperimentValue {
    std::string label;
    double value = 0.0;
    std::optional<double> stderr_;
    std::string provenance;  // exact-enumeration | closed-form | monte-carlo | bound | check
};

// One named experiment run: measured values with provenance and a verdict
// that is a pure function of the values and the declared tolerances.
struct ExperimentReport {
    std::string name;
    json config;  // fully resolved parameters, including the seed
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::ReportOnly;
    std::vector<ExperimentValue> values;
    std::vector<std::string> notes;
    double wall_ms = 0.0;
    int workers = 0;

    void add(std::string label, double value, std::string provenance);
    void add(std::string label, const MCEstimate& est);
    double value_of(const std::string& label) const;
};

// ---------------------------------------------------------------------------
// Test-function families
// ---------------------------------------------------------------------------

// Level-1 coefficients U_i / sqrt(m) with Haar unitary U_i; max influence n/m.
CubeFunction spread_level1_family(int m, int n, Rng& rng);

// Same family rescaled so that max_sigma ||f(sigma)|| = 1.
CubeFunction spread_level1_clipped(int m, int n, Rng& rng);

// Random coefficients on every level-d subset with total level mass 1, then
// rescaled so that max_sigma ||f(sigma)|| = 1. `concentrate` restricts the
// support to the first d+2 variables, raising the maximum influence.
CubeFunction random_degree_family(int m, int n, int d, Rng& rng, bool concentrate = false);

// Generic random polynomial of degree at most dmax (each subset kept with
// probability 1/2, at least one subset of full degree).
NCPoly random_ncpoly(int m, int n, int dmax, Rng& rng);

// Coefficients C_i = B^i A B^{-i} with A the corner unit and B the cyclic
// shift: C_i C_j = 0 for i != j and Tr(C_i) = 1.
NCPoly cyclic_counterexample_poly(int n);

std::vector<Matrix> matrix_unit_frame(int n);
Tensor4 random_psd_tensor(int n, int factors, Rng& rng);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct WignerParams {
    int m = 5;
    int n = 200;
    long long samples = 200;
    double tol = 0.1;
};
ExperimentReport run_counterexample_wigner(const WignerParams& p, std::uint64_t seed,
                                           int workers = 0);

struct CyclicParams {
    int n = 8;
    long long samples = 10000;
};
ExperimentReport run_counterexample_cyclic(const CyclicParams& p, std::uint64_t seed,
                                           int workers = 0);

struct HyperParams {
    int instances = 50;
    int m = 8;
    int n = 2;
    int dmax = 3;
    std::vector<int> ks = {2, 3};
    long long samples = 10000;
};
ExperimentReport run_hyper(const HyperParams& p, std::uint64_t seed, int workers = 0);

struct MajorizeParams {
    std::string family = "spread1";  // spread1 | dictator | random_d
    int m = 16;
    int n = 2;
    int d = 1;
    int K = 2;
    std::vector<int> p_grid = {64, 128, 256};
    long long samples = 10000;
    double c2 = 2.0;
};
ExperimentReport run_majorization_sweep(const MajorizeParams& p, std::uint64_t seed,
                                        int workers = 0);

struct NoiseStabilityParams {
    std::string f_kind = "majority";  // majority | dictator
    int m = 7;
    int n = 1;
    double rho = 0.5;
    int p = 64;
    long long samples = 20000;
};
ExperimentReport run_noise_stability(const NoiseStabilityParams& p, std::uint64_t seed,
                                     int workers = 0);

struct AntiConcParams {
    int m = 10;
    int n = 2;
    int d = 2;
    int p = 64;
    long long samples = 4000;
    double t_max = 2.5;
    double t_step = 0.1;
};
ExperimentReport run_anticoncentration(const AntiConcParams& p, std::uint64_t seed,
                                       int workers = 0);

struct ChopParams {
    double rho = 0.9;
    std::vector<int> p_grid = {64, 256};
    long long samples = 10000;
    int n = 2;
    int m = 8;
};
ExperimentReport run_chop(const ChopParams& p, std::uint64_t seed, int workers = 0);

struct EnsembleCheckParams {
    std::string kind = "haar";  // haar | frame | wigner | rademacher
    int n = 2;
    int K = 2;
    long long samples = 20000;
    bool damping = false;
    std::vector<int> p_grid = {8, 32};
};
ExperimentReport run_ensemble_check(const EnsembleCheckParams& p, std::uint64_t seed,
                                    int workers = 0);

struct NcgiOptParams {
    int n = 2;
    int factors = 3;
    int restarts = 20;
    std::optional<json> instance;  // 4-tensor instance file: {n, matrix} or {n, factors}
};
ExperimentReport run_ncgi_opt(const NcgiOptParams& p, std::uint64_t seed, int workers = 0);

struct PsdVariantParams {
    int n = 3;
    int d = 2;
    int restarts = 20;
    int rounding_draws = 100;
    std::string pipeline = "all";  // all | constrained | relaxed | rounded
    std::optional<json> instance;  // block instance file: {n, d, matrix}
};
ExperimentReport run_psd_variant(const PsdVariantParams& p, std::uint64_t seed, int workers = 0);

struct DictTestParams {
    int n = 2;
    int N = 2;
    int m = 4;
    int instances = 5;
    double tau = 0.0;  // > 0 also runs the C_tau lower-bound search
    int restarts = 20;
};
ExperimentReport run_dict_test(const DictTestParams& p, std::uint64_t seed, int workers = 0);

struct KdParams {
    int d = 1;
    long long samples = 1000000;
};
ExperimentReport run_kd_estimate(const KdParams& p, std::uint64_t seed, int workers = 0);

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct ExperimentInfo {
    std::string name;
    std::string summary;
    json defaults;
};

const std::vector<ExperimentInfo>& experiment_registry();

// Runs a registered experiment with `params` merged over its defaults.
ExperimentReport run_experiment(const std::string& name, const json& params, std::uint64_t seed,
                                int workers = 0);

}  // namespace ncmaj
