#include <doctest.h>

#include "ncmaj/experiments.hpp"
#include "ncmaj/serialization.hpp"
#include "oracles.hpp"

using namespace ncmaj;

TEST_CASE("registry") {
    const auto& reg = experiment_registry();
    CHECK(reg.size() == 12);
    const std::vector<std::string> expected = {
        "counterexample-wigner", "counterexample-cyclic", "hyper",        "majorize",
        "chop",                  "noise-stability",       "anticoncentration", "ncgi-opt",
        "psd-variant",           "dict-test",             "kd-estimate",  "ensemble-check"};
    for (const auto& name : expected) {
        bool found = false;
        for (const auto& info : reg)
            if (info.name == name) {
                found = true;
                CHECK(!info.summary.empty());
                CHECK(info.defaults.is_object());
            }
        CHECK_MESSAGE(found, name);
    }
    CHECK_THROWS_AS(run_experiment("nope", json::object(), 1, 1), InvalidInput);
}

TEST_CASE("every experiment runs with scaled-down defaults") {
    const json small = {{"samples", 400},   {"instances", 2}, {"restarts", 4},
                        {"n", 2},           {"m", 4},         {"p_grid", {8, 16}},
                        {"p", 8},           {"dmax", 2},      {"rounding_draws", 10},
                        {"d", 1},           {"t_max", 1.5},   {"t_step", 0.5}};
    for (const auto& info : experiment_registry()) {
        json params = small;
        if (info.name == "counterexample-wigner") params = {{"n", 24}, {"m", 3}, {"samples", 200}};
        if (info.name == "counterexample-cyclic") params = {{"n", 3}, {"samples", 400}};
        if (info.name == "noise-stability")
            params = {{"f_kind", "majority"}, {"m", 3}, {"n", 1}, {"p", 8}, {"samples", 400}};
        if (info.name == "kd-estimate") params = {{"d", 1}, {"samples", 4000}};
        const ExperimentReport rep = run_experiment(info.name, params, 2024, 2);
        CHECK(rep.name == info.name);
        CHECK_MESSAGE(rep.verdict != Verdict::Fail, info.name);
        CHECK(rep.config.contains("seed"));
        CHECK(!rep.values.empty());
    }
}

TEST_CASE("wigner experiment Boolean values") {
    const ExperimentReport m2 =
        run_counterexample_wigner({.m = 2, .n = 8, .samples = 100, .tol = 0.5}, 7, 2);
    CHECK(m2.value_of("boolean_fourth_moment") == doctest::Approx(2.0).epsilon(1e-13));
    const ExperimentReport m10 =
        run_counterexample_wigner({.m = 10, .n = 8, .samples = 100, .tol = 0.5}, 7, 2);
    CHECK(m10.value_of("boolean_fourth_moment") == doctest::Approx(2.8).epsilon(1e-13));
}

TEST_CASE("cyclic experiment exactness") {
    for (int n : {2, 3, 5}) {
        const ExperimentReport rep =
            run_counterexample_cyclic({.n = n, .samples = 2000}, 11, 2);
        CHECK(rep.value_of("boolean_fourth_moment") == static_cast<double>(n));
        CHECK(rep.value_of("coefficient_trace_deviation") == 0.0);
        CHECK(rep.value_of("coefficient_product_deviation") == 0.0);
        CHECK(std::abs(rep.value_of("haar_fourth_moment") - (2.0 * n - 1.0)) <= 0.5);
    }
}

TEST_CASE("majorization sweep on the dictator family is report-only") {
    MajorizeParams p;
    p.family = "dictator";
    p.m = 4;
    p.n = 2;
    p.p_grid = {8, 16};
    p.samples = 500;
    const ExperimentReport rep = run_majorization_sweep(p, 3, 2);
    CHECK(rep.verdict == Verdict::ReportOnly);
    CHECK(rep.value_of("tau") == doctest::Approx(2.0));
}

TEST_CASE("majorization sweep records K = 2 and K = 3 verdicts on the same family") {
    MajorizeParams p;
    p.family = "spread1";
    p.m = 8;
    p.n = 2;
    p.p_grid = {16, 32};
    p.samples = 4000;
    p.K = 2;
    const ExperimentReport k2 = run_majorization_sweep(p, 17, 2);
    p.K = 3;
    const ExperimentReport k3 = run_majorization_sweep(p, 17, 2);
    // same seed, same family draw: tau agrees, both inequality verdicts recorded
    CHECK(k2.value_of("tau") == k3.value_of("tau"));
    CHECK(k2.value_of("inequalities_hold") == 1.0);
    CHECK(k3.value_of("inequalities_hold") == 1.0);
    // the general-K slack differs from the fourth-moment form
    CHECK(k3.value_of("slack") > 0.0);
    CHECK(k3.value_of("slack") != k2.value_of("slack"));
}

TEST_CASE("noise stability preconditions") {
    NoiseStabilityParams p;
    p.f_kind = "majority";
    p.m = 4;  // even: rejected
    CHECK_THROWS_AS(run_noise_stability(p, 1, 1), InvalidInput);

    p.m = 3;
    p.n = 2;  // majority needs n = 1
    CHECK_THROWS_AS(run_noise_stability(p, 1, 1), InvalidInput);

    p.n = 1;
    p.p = 8;
    p.samples = 500;
    const ExperimentReport rep = run_noise_stability(p, 5, 2);
    CHECK(rep.verdict == Verdict::ReportOnly);
    CHECK(rep.value_of("noise_stability_exact") > 0.0);

    // dictator stability is rho^2 exactly
    NoiseStabilityParams d;
    d.f_kind = "dictator";
    d.m = 3;
    d.n = 2;
    d.rho = 0.5;
    d.p = 8;
    d.samples = 400;
    const ExperimentReport drep = run_noise_stability(d, 5, 2);
    CHECK(drep.value_of("noise_stability_exact") == doctest::Approx(0.25));
}

TEST_CASE("chop experiment ties the dictator sweep") {
    ChopParams p;
    p.p_grid = {8, 32};
    p.samples = 600;
    p.m = 4;
    const ExperimentReport rep = run_chop(p, 13, 2);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.value_of("dictator_distance_p8") ==
          doctest::Approx(rep.value_of("dictator_distance_p32")).epsilon(1e-12));
    CHECK(rep.value_of("dictator_distance_p8") > 0.0);
}

TEST_CASE("reports are reproducible bit for bit") {
    const ExperimentReport a = run_counterexample_cyclic({.n = 4, .samples = 1500}, 99, 2);
    const ExperimentReport b = run_counterexample_cyclic({.n = 4, .samples = 1500}, 99, 1);
    CHECK(report_results_block(a).dump() == report_results_block(b).dump());

    const ExperimentReport k1 = run_kd_estimate({.d = 2, .samples = 3000}, 123, 2);
    const ExperimentReport k2 = run_kd_estimate({.d = 2, .samples = 3000}, 123, 2);
    CHECK(report_results_block(k1).dump() == report_results_block(k2).dump());

    // a different seed must change the Monte Carlo values
    const ExperimentReport k3 = run_kd_estimate({.d = 2, .samples = 3000}, 124, 2);
    CHECK(k1.value_of("K_estimate") != k3.value_of("K_estimate"));
}

TEST_CASE("optimization experiments accept instance files") {
    // factored 4-tensor instance: single identity factor, optimum n^2
    const json tensor = {{"n", 2},
                         {"factors", {matrix_to_json(Matrix::Identity(2, 2))}}};
    NcgiOptParams np;
    np.restarts = 6;
    np.instance = tensor;
    const ExperimentReport nrep = run_ncgi_opt(np, 21, 2);
    CHECK(nrep.verdict == Verdict::Pass);
    CHECK(nrep.value_of("free_value") == doctest::Approx(4.0).epsilon(1e-8));

    // dense tensor without factors: free ascent only, report-only verdict
    NcgiOptParams dense;
    dense.restarts = 6;
    dense.instance = json{{"n", 2}, {"matrix", matrix_to_json(Matrix::Identity(4, 4))}};
    const ExperimentReport drep = run_ncgi_opt(dense, 21, 2);
    CHECK(drep.verdict == Verdict::ReportOnly);

    // block instance pipelines
    PsdVariantParams pp;
    pp.restarts = 4;
    pp.rounding_draws = 5;
    pp.instance = json{{"n", 3}, {"d", 1}, {"matrix", matrix_to_json(Matrix::Identity(3, 3))}};
    for (const std::string pipeline : {"constrained", "relaxed", "rounded", "all"}) {
        pp.pipeline = pipeline;
        const ExperimentReport prep = run_psd_variant(pp, 22, 2);
        CHECK(prep.verdict == Verdict::Pass);
    }
    pp.pipeline = "nope";
    CHECK_THROWS_AS(run_psd_variant(pp, 22, 2), InvalidInput);
}

TEST_CASE("families") {
    Rng rng({130, 0});
    const CubeFunction spread = spread_level1_family(8, 2, rng);
    CHECK(max_influence(spread) == doctest::Approx(2.0 / 8.0));
    CHECK(from_cube_function(spread).degree() == 1);

    const CubeFunction clipped = spread_level1_clipped(8, 2, rng);
    CHECK(max_pointwise_norm(clipped) == doctest::Approx(1.0));

    const CubeFunction rd = random_degree_family(6, 2, 2, rng);
    CHECK(max_pointwise_norm(rd) == doctest::Approx(1.0));
    CHECK(from_cube_function(rd).degree() == 2);

    const CubeFunction conc = random_degree_family(6, 2, 2, rng, true);
    CHECK(max_influence(conc) > max_influence(rd));
}
