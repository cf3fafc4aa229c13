#include <doctest.h>

#include "ncmaj/experiments.hpp"
#include "ncmaj/ncgi.hpp"
#include "oracles.hpp"

using namespace ncmaj;

namespace {

// Brute-force oracle for n = 2: a zooming grid over SU(2) for Y (the global
// phase of Y does not move the value), with X eliminated exactly through
// the nuclear norm of the linear coefficient. All contractions are explicit
// loops and the 2x2 nuclear norm is in closed form.
Matrix su2(double a, double b, double c) {
    const double q0 = std::cos(a);
    const double q1 = std::sin(a) * std::cos(b);
    const double q2 = std::sin(a) * std::sin(b) * std::cos(c);
    const double q3 = std::sin(a) * std::sin(b) * std::sin(c);
    Matrix y(2, 2);
    y(0, 0) = Complex(q0, q3);
    y(0, 1) = Complex(q2, q1);
    y(1, 0) = Complex(-q2, q1);
    y(1, 1) = Complex(q0, -q3);
    return y;
}

double nuclear2(const Matrix& c) {
    const Matrix g = c.adjoint() * c;
    const double tr = g(0, 0).real() + g(1, 1).real();
    const double dt = std::abs(c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0));
    return std::sqrt(std::max(0.0, tr + 2.0 * dt));
}

double grid_value(const Matrix& m, const Matrix& y) {
    Matrix c = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    c(i, j) += m(i * 2 + k, j * 2 + l) * std::conj(y(l, k));
    return nuclear2(c);
}

double grid_oracle_opt2(const Tensor4& t) {
    double best = -1.0;
    double ca = M_PI / 2, cb = M_PI / 2, cc = M_PI;
    double ha = M_PI / 2, hb = M_PI / 2, hc = M_PI;
    int per_axis = 24;
    for (int round = 0; round < 6; ++round) {
        double ba = ca, bb = cb, bc = cc;
        for (int i = 0; i <= per_axis; ++i)
            for (int j = 0; j <= per_axis; ++j)
                for (int k = 0; k <= per_axis; ++k) {
                    const double a = ca - ha + 2.0 * ha * i / per_axis;
                    const double b = cb - hb + 2.0 * hb * j / per_axis;
                    const double c = cc - hc + 2.0 * hc * k / per_axis;
                    const double v = grid_value(t.matrix, su2(a, b, c));
                    if (v > best) {
                        best = v;
                        ba = a;
                        bb = b;
                        bc = c;
                    }
                }
        ca = ba;
        cb = bb;
        cc = bc;
        ha /= 3.0;
        hb /= 3.0;
        hc /= 3.0;
        per_axis = 12;
    }
    return best;
}

}  // namespace

TEST_CASE("vector unitary construction") {
    Rng rng({91, 0});
    const Matrix x = haar_unitary_sample(3, rng);
    const VectorUnitary v = VectorUnitary::embedded(x, 4);
    CHECK(v.N == 4);
    const Matrix w = v.odot_self();
    CHECK((w - kron(x, x.conjugate())).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(VectorUnitary::from_components({Matrix::Identity(2, 2),
                                                    Matrix::Identity(2, 2)}),
                    InvalidInput);
}

TEST_CASE("psd tensor builders") {
    CHECK((build_psd_tensor({Matrix::Identity(2, 2)}).matrix -
           kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    const Tensor4 z = zero_psd_tensor(2);
    CHECK(z.matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(build_psd_tensor({}), InvalidInput);

    Rng rng({92, 0});
    std::vector<Matrix> fs;
    for (int i = 0; i < 3; ++i) fs.push_back(oracles::random_matrix(2, 2, rng));
    const Tensor4 t = build_psd_tensor(fs);
    Matrix want = Matrix::Zero(4, 4);
    for (const auto& f : fs) want += oracles::kron_loops(f, f.conjugate());
    CHECK((t.matrix - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("objective forms agree") {
    Rng rng({93, 0});
    const Tensor4 t = random_psd_tensor(2, 3, rng);
    for (int i = 0; i < 5; ++i) {
        const Matrix x = haar_unitary_sample(2, rng);
        const Matrix y = haar_unitary_sample(2, rng);
        Complex factored = 0.0;
        for (const auto& f : *t.psd_factors)
            factored += (f * x).trace() * std::conj((f * y).trace());
        CHECK(std::abs(ncgi_objective(t, x, y) - factored.real()) <= 1e-10);
        CHECK(std::abs(ncgi_symmetric_objective(t, x) - ncgi_objective(t, x, x)) <= 1e-10);
    }
}

TEST_CASE("unitary ascent on closed-form instances") {
    AscentOptions opts;
    opts.restarts = 8;

    // scalar instance: value is the modulus
    Tensor4 s = Tensor4::from_matrix((Matrix(1, 1) << Complex(-0.3, 0.4)).finished());
    const AscentResult rs = opt_unitary_ascent(s, opts, {94, 0});
    CHECK(std::abs(rs.value - 0.5) <= 1e-9);

    // identity factor: objective Tr(X) conj(Tr(Y)), optimum n^2 at X = Y = I
    const Tensor4 t = build_psd_tensor({Matrix::Identity(3, 3)});
    const AscentResult rt = opt_unitary_ascent(t, opts, {95, 0});
    CHECK(std::abs(rt.value - 9.0) <= 1e-8);
    CHECK(rt.monotone);
}

TEST_CASE("unitary ascent matches the zooming grid oracle at n = 2") {
    AscentOptions opts;
    opts.restarts = 12;
    Rng rng({96, 0});
    for (int i = 0; i < 2; ++i) {
        const Tensor4 t = random_psd_tensor(2, 2 + i, rng);
        const AscentResult r = opt_unitary_ascent(t, opts, {97, static_cast<std::uint64_t>(i)});
        const double grid = grid_oracle_opt2(t);
        CHECK(std::abs(r.value - grid) <= 1e-3);
        CHECK(r.monotone);
    }
}

TEST_CASE("polar update optimality against random probes") {
    Rng rng({98, 0});
    const Matrix c = oracles::random_matrix(3, 3, rng);
    const double best = nuclear_norm(c);
    const Matrix xstar = polar_maximizer(c);
    CHECK(std::abs((c * xstar).trace().real() - best) <= 1e-10);
    for (int i = 0; i < 10000; ++i) {
        const Matrix probe = haar_unitary_sample(3, rng);
        CHECK((c * probe).trace().real() <= best + 1e-9);
    }
}

TEST_CASE("symmetric vs free values on PSD instances") {
    AscentOptions opts;
    opts.restarts = 12;
    Rng rng({99, 0});
    for (int i = 0; i < 3; ++i) {
        const Tensor4 t = random_psd_tensor(2 + i % 2, 3, rng);
        const SymmetricFreeComparison cmp =
            compare_symmetric_free(t, opts, {100, static_cast<std::uint64_t>(i) * 50000});
        CHECK(std::abs(cmp.free_result.value - cmp.symmetric_result.value) <= 1e-6);
    }
    const Tensor4 bare = Tensor4::from_matrix(Matrix::Identity(4, 4));
    CHECK_THROWS_AS(opt_symmetric_ascent(bare, opts, {0, 0}), InvalidInput);
}

TEST_CASE("vector unitary ascent reduces to the unitary problem at N = 1") {
    AscentOptions opts;
    opts.restarts = 6;
    opts.max_iters = 300;
    Rng rng({101, 0});
    const Tensor4 t = random_psd_tensor(2, 2, rng);
    const AscentResult exact = opt_unitary_ascent(t, opts, {102, 0});
    const VectorAscentResult vec = vector_unitary_ascent(t, 1, opts, {103, 0});
    CHECK(vec.value <= exact.value + 1e-6);
    CHECK(vec.value >= exact.value - 5e-3);
}

TEST_CASE("dictatorship test objective") {
    Rng rng({104, 0});
    const Tensor4 m = random_psd_tensor(2, 2, rng);
    const Matrix x = haar_unitary_sample(2, rng);
    const VectorUnitary v = VectorUnitary::embedded(x, 3);

    const CubeFunction dict = CubeFunction::dictator(3, 2, 2);
    const double obj = obj_dict_test(dict, dict, m, v);
    const double completeness = (v.odot_self() * m.matrix).trace().real();
    CHECK(std::abs(obj - completeness) <= 1e-12);

    // scalar case: n = 1, N = 1, |V| = 1
    const Tensor4 ms = Tensor4::from_matrix((Matrix(1, 1) << 0.7).finished());
    VectorUnitary vs = VectorUnitary::embedded((Matrix(1, 1) << Complex(0.6, 0.8)).finished(), 1);
    const CubeFunction sdict = CubeFunction::dictator(2, 1, 1);
    CHECK(std::abs(obj_dict_test(sdict, sdict, ms, vs) - 0.7) <= 1e-12);

    // no level-1 mass: the objective vanishes
    CubeFunction flat(3, 2);
    flat.coeffs[0b11] = oracles::random_matrix(2, 2, rng);
    CHECK(obj_dict_test(flat, flat, m, v) == 0.0);

    // both routes agree on random data
    for (int t = 0; t < 5; ++t) {
        CubeFunction f(3, 2), h(3, 2);
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            if (rng.uniform() < 0.6) f.coeffs[mask] = oracles::random_matrix(2, 2, rng);
            if (rng.uniform() < 0.6) h.coeffs[mask] = oracles::random_matrix(2, 2, rng);
        }
        const DictObjective routes = obj_dict_test_routes(f, h, m, v);
        CHECK(std::abs(routes.fourier_route - routes.operator_route) <= 1e-9);
    }
}

TEST_CASE("ctau search") {
    Rng rng({105, 0});
    const Tensor4 m = random_psd_tensor(2, 2, rng);
    const Matrix x = haar_unitary_sample(2, rng);
    const VectorUnitary v = VectorUnitary::embedded(x, 2);
    AscentOptions opts;
    opts.restarts = 6;

    // tau >= n admits dictators: the bound reaches the completeness value
    const CtauReport wide = ctau_search(m, v, 2.5, 4, opts, {106, 0});
    CHECK(wide.lower_bound >= wide.completeness - 1e-9);

    const CtauReport narrow = ctau_search(m, v, 0.05, 4, opts, {107, 0});
    CHECK(narrow.lower_bound >= 0.0);
    CHECK(narrow.lower_bound <= wide.lower_bound + 1e-9);

    CHECK_THROWS_AS(ctau_search(m, v, 0.0, 4, opts, {0, 0}), InvalidInput);
    CHECK_THROWS_AS(ctau_search(m, v, -1.0, 4, opts, {0, 0}), InvalidInput);
}

TEST_CASE("psd block variant") {
    AscentOptions opts;
    opts.restarts = 8;

    // identity instance, d = 1: every feasible point scores n
    const PsdBlockInstance id3 = PsdBlockInstance::from_matrix(3, 1, Matrix::Identity(3, 3));
    const PsdVariantResult con = psd_variant_solve(id3, true, opts, {108, 0});
    const PsdVariantResult rel = psd_variant_solve(id3, false, opts, {109, 0});
    CHECK(std::abs(con.value - 3.0) <= 1e-9);
    CHECK(std::abs(rel.value - 3.0) <= 1e-9);

    Rng rng({110, 0});
    const PsdBlockInstance inst = PsdBlockInstance::random(3, 2, rng);
    const PsdVariantResult c2 = psd_variant_solve(inst, true, opts, {111, 0});
    std::vector<Matrix> embedded;
    for (const auto& x : c2.tuple) {
        Matrix v = Matrix::Zero(2, 6);
        v.leftCols(2) = x;
        embedded.push_back(std::move(v));
    }
    const PsdVariantResult r2 = psd_variant_solve(inst, false, opts, {112, 0}, {embedded});
    CHECK(r2.value >= c2.value - 1e-9);
    CHECK(c2.monotone);
    CHECK(r2.monotone);

    Rng round_rng({113, 0});
    double mean = 0.0;
    const int draws = 40;
    for (int i = 0; i < draws; ++i)
        mean += psd_objective(inst, round_relaxation(r2.tuple, round_rng));
    mean /= draws;
    CHECK(mean <= r2.value + 1e-9);

    // non-PSD instances are rejected
    Matrix neg = Matrix::Identity(4, 4);
    neg(0, 0) = -1.0;
    CHECK_THROWS_AS(PsdBlockInstance::from_matrix(2, 2, neg), InvalidInput);
}

TEST_CASE("rounding an embedded tuple preserves the objective") {
    Rng rng({114, 0});
    const PsdBlockInstance inst = PsdBlockInstance::random(3, 2, rng);
    std::vector<Matrix> embedded;
    std::vector<Matrix> unitaries;
    for (int i = 0; i < 3; ++i) {
        const Matrix x = haar_unitary_sample(2, rng);
        unitaries.push_back(x);
        Matrix v = Matrix::Zero(2, 6);
        v.leftCols(2) = x;
        embedded.push_back(std::move(v));
    }
    Rng round_rng({115, 0});
    const std::vector<Matrix> rounded = round_relaxation(embedded, round_rng);
    CHECK(std::abs(psd_objective(inst, rounded) - psd_objective(inst, unitaries)) <= 1e-9);
}

TEST_CASE("argmax phase invariance under positive scaling") {
    Rng rng({118, 0});
    Tensor4 t = random_psd_tensor(2, 3, rng);
    Tensor4 t2 = t;
    t2.matrix *= 2.0;
    for (auto& f : *t2.psd_factors) f *= std::sqrt(2.0);
    AscentOptions opts;
    opts.restarts = 6;
    const AscentResult a = opt_unitary_ascent(t, opts, {119, 0});
    const AscentResult b = opt_unitary_ascent(t2, opts, {119, 0});
    // the polar updates are scale-invariant: identical iterates, doubled value
    CHECK(std::abs(b.value - 2.0 * a.value) <= 1e-9);
    CHECK(std::abs(std::abs((a.x.adjoint() * b.x).trace()) - 2.0) <= 1e-9);
    CHECK(std::abs(std::abs((a.y.adjoint() * b.y).trace()) - 2.0) <= 1e-9);
}

TEST_CASE("K(d) estimator") {
    const MCEstimate k1 = estimate_Kd(1, 200000, {116, 0}, 2);
    CHECK(std::abs(k1.mean - M_PI / 4.0) <= 3.0 * k1.stderr_);

    // homogeneity of the square-root statistic: scaling entries by c scales
    // sqrt(K) by c, so K scales by c^2; check via two matched streams
    const MCEstimate base = estimate_Kd(2, 5000, {117, 0}, 2);
    CHECK(base.mean > 0.0);
    CHECK(base.stderr_ > 0.0);
    CHECK_THROWS_AS(estimate_Kd(0, 10, {0, 0}, 1), InvalidInput);
}
