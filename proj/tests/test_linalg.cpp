#include <doctest.h>

#include "ncmaj/linalg.hpp"
#include "oracles.hpp"

using namespace ncmaj;

namespace {
Matrix diag2(Complex a, Complex b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}
}  // namespace

TEST_CASE("op_norm basics") {
    CHECK(op_norm(Matrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-14));

    Matrix nil = Matrix::Zero(2, 2);
    nil(0, 1) = 2.0;
    CHECK(op_norm(nil) == doctest::Approx(2.0).epsilon(1e-14));

    CHECK(op_norm(Matrix::Zero(3, 3)) == 0.0);

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(op_norm(bad), InvalidInput);
}

TEST_CASE("op_norm matches the bisection oracle") {
    Rng rng({11, 0});
    for (int t = 0; t < 10; ++t) {
        const Matrix a = oracles::random_matrix(4, 4, rng);
        CHECK(std::abs(op_norm(a) - oracles::op_norm_bisection(a)) <= 1e-10);
    }
    // rectangular inputs are fine
    const Matrix wide = oracles::random_matrix(2, 5, rng);
    CHECK(std::abs(op_norm(wide) - oracles::op_norm_bisection(wide)) <= 1e-10);
}

TEST_CASE("abs_matrix") {
    const Matrix d = diag2(-2.0, Complex(0.0, 3.0));
    const Matrix ad = abs_matrix(d);
    CHECK((ad - diag2(2.0, 3.0)).cwiseAbs().maxCoeff() <= 1e-12);

    Rng rng({12, 0});
    const Matrix u = haar_unitary_sample(3, rng);
    CHECK((abs_matrix(u) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

    for (int t = 0; t < 5; ++t) {
        const Matrix a = oracles::random_matrix(3, 3, rng);
        const Matrix ab = abs_matrix(a);
        CHECK(is_hermitian(ab, 1e-10));
        CHECK((ab * ab - a * a.adjoint()).cwiseAbs().maxCoeff() <= 1e-9);
        // eigenvalues of |A| equal the singular values of A
        Eigen::SelfAdjointEigenSolver<Matrix> es(ab);
        auto sv = singular_values(a);
        std::sort(sv.begin(), sv.end());
        for (int i = 0; i < 3; ++i) CHECK(std::abs(es.eigenvalues()(i) - sv[i]) <= 1e-10);
    }
    CHECK_THROWS_AS(abs_matrix(Matrix::Zero(2, 3)), InvalidInput);
}

TEST_CASE("spectral_apply") {
    const Matrix a = diag2(0.5, 2.0);
    const Matrix chopped = spectral_apply(ScalarTestFn::chop(), a);
    CHECK((chopped - diag2(0.5, 1.0)).cwiseAbs().maxCoeff() <= 1e-12);

    const Matrix h = spectral_apply(ScalarTestFn::hinge(), Matrix::Identity(2, 2));
    CHECK(h.cwiseAbs().maxCoeff() <= 1e-12);

    Rng rng({13, 0});
    const Matrix herm = oracles::random_hermitian(3, rng);
    const Matrix sq = spectral_apply(ScalarTestFn::power(2), herm);
    CHECK((sq - herm * herm).cwiseAbs().maxCoeff() <= 1e-10);
    const Matrix ident = spectral_apply(ScalarTestFn::power(1), herm);
    CHECK((ident - herm).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((sq * herm - herm * sq).cwiseAbs().maxCoeff() <= 1e-9);

    CHECK_THROWS_AS(spectral_apply(ScalarTestFn::chop(), oracles::random_matrix(3, 3, rng)),
                    InvalidInput);
}

TEST_CASE("chop_general") {
    Rng rng({14, 0});
    const Matrix small = 0.4 * haar_unitary_sample(3, rng);
    CHECK((chop_general(small) - small).cwiseAbs().maxCoeff() <= 1e-10);

    const Matrix big = 3.0 * Matrix::Identity(2, 2);
    CHECK((chop_general(big) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);

    const Matrix u = haar_unitary_sample(2, rng);
    const Matrix v = haar_unitary_sample(2, rng);
    const Matrix a = u * diag2(0.2, 5.0) * v.adjoint();
    const Matrix want = u * diag2(0.2, 1.0) * v.adjoint();
    CHECK((chop_general(a) - want).cwiseAbs().maxCoeff() <= 1e-9);

    for (int t = 0; t < 5; ++t) {
        const Matrix r = 2.0 * oracles::random_matrix(3, 3, rng);
        const Matrix c = chop_general(r);
        CHECK(op_norm(c) <= 1.0 + 1e-10);
        CHECK((chop_general(c) - c).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("embed_iota") {
    const Matrix e = embed_iota(Matrix::Identity(2, 2), 4);
    Matrix want = Matrix::Zero(4, 4);
    want(0, 0) = want(1, 1) = 1.0;
    CHECK((e - want).cwiseAbs().maxCoeff() == 0.0);

    Rng rng({15, 0});
    const Matrix a = oracles::random_matrix(3, 3, rng);
    const Matrix ea = embed_iota(a, 5);
    CHECK(std::abs(ea.trace() - a.trace()) <= 1e-14);
    CHECK(std::abs(op_norm(ea) - op_norm(a)) <= 1e-12);
    auto sv = singular_values(ea);
    CHECK(sv.size() == 5);
    CHECK(sv[3] <= 1e-14);
    CHECK(sv[4] <= 1e-14);

    CHECK_THROWS_AS(embed_iota(a, 2), InvalidInput);
}

TEST_CASE("embed_iota_tensor") {
    const Tensor4 t = Tensor4::from_factors({Matrix::Identity(2, 2)});
    const Tensor4 et = embed_iota_tensor(t, 3);
    const Matrix want = oracles::kron_loops(embed_iota(Matrix::Identity(2, 2), 3),
                                            embed_iota(Matrix::Identity(2, 2), 3).conjugate());
    CHECK((et.matrix - want).cwiseAbs().maxCoeff() <= 1e-12);

    const Tensor4 bare = Tensor4::from_matrix(Matrix::Identity(4, 4));
    CHECK_THROWS_AS(embed_iota_tensor(bare, 3), UnsupportedInput);
}

TEST_CASE("partial_trace_2") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK((partial_trace_2(kron(i2, i2)) - 2.0 * i2).cwiseAbs().maxCoeff() <= 1e-14);

    Rng rng({16, 0});
    Matrix traceless = oracles::random_matrix(2, 2, rng);
    traceless(1, 1) = -traceless(0, 0);
    const Matrix a = oracles::random_matrix(2, 2, rng);
    CHECK(partial_trace_2(kron(a, traceless)).cwiseAbs().maxCoeff() <= 1e-12);

    Matrix x = Matrix::Zero(4, 4);
    for (int t = 0; t < 3; ++t)
        x += kron(oracles::random_matrix(2, 2, rng), oracles::random_matrix(2, 2, rng));
    CHECK((partial_trace_2(x) - oracles::partial_trace_2_loops(x, 2)).cwiseAbs().maxCoeff() <=
          1e-12);

    CHECK_THROWS_AS(partial_trace_2(Matrix::Zero(3, 3)), InvalidInput);
}

TEST_CASE("partial trace product rule on random product tensors") {
    Rng rng({17, 0});
    for (int t = 0; t < 100; ++t) {
        const Matrix a = oracles::random_matrix(2, 2, rng);
        const Matrix b = oracles::random_matrix(2, 2, rng);
        const Matrix got = partial_trace_2(kron(a, b));
        CHECK((got - a * b.trace()).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("trace identity through the partial trace") {
    Rng rng({18, 0});
    for (int t = 0; t < 20; ++t) {
        const Matrix a1 = oracles::random_matrix(4, 4, rng);
        const Matrix d1 = oracles::random_matrix(4, 4, rng);
        const Matrix c = oracles::random_matrix(2, 2, rng);
        const Matrix cp = oracles::random_matrix(2, 2, rng);
        const Complex lhs = (a1 * kron(c, cp) * d1).trace();
        const Complex rhs =
            (c * partial_trace_2(d1 * a1 * kron(Matrix::Identity(2, 2), cp))).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("odot") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK((odot({i2}, {i2}) - kron(i2, i2)).cwiseAbs().maxCoeff() == 0.0);

    Rng rng({19, 0});
    std::vector<Matrix> u, v;
    for (int a = 0; a < 3; ++a) {
        u.push_back(oracles::random_matrix(2, 2, rng));
        v.push_back(oracles::random_matrix(2, 2, rng));
    }
    CHECK((odot(u, v) - oracles::odot_loops(u, v)).cwiseAbs().maxCoeff() <= 1e-12);

    std::vector<Matrix> cu = u;
    for (auto& x : cu) x *= 2.5;
    CHECK((odot(cu, v) - 2.5 * odot(u, v)).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(odot(u, {i2}), InvalidInput);
}

TEST_CASE("norm-trace sandwich") {
    Rng rng({20, 0});
    for (int t = 0; t < 20; ++t) {
        const Matrix a = oracles::random_matrix(3, 3, rng);
        const double nrm = op_norm(a);
        const double frob2 = (a * a.adjoint()).real().trace();
        CHECK(nrm * nrm <= frob2 + 1e-10);
        CHECK(frob2 <= 3.0 * nrm * nrm + 1e-10);
    }
}

TEST_CASE("mollified test functions") {
    const double lambda = 0.25;
    const auto hinge = ScalarTestFn::hinge();
    const auto smooth = ScalarTestFn::mollified(hinge, lambda);
    for (double x = -4.0; x <= 4.0; x += 0.01) {
        CHECK(std::abs(smooth(x) - hinge(x)) <= lambda);
        CHECK(std::abs(smooth.d1(x)) <= 3.0);
        CHECK(std::abs(smooth.d2(x)) <= 3.0 / lambda);
        CHECK(std::abs(smooth.d3(x)) <= 3.0 / (lambda * lambda));
    }

    // finite differences agree with the closed-form derivatives
    const double h = 1e-5;
    for (double x : {-1.3, -0.2, 0.9, 1.1, 2.4}) {
        const double fd = (smooth(x + h) - smooth(x - h)) / (2 * h);
        CHECK(std::abs(fd - smooth.d1(x)) <= 1e-6);
        const double fd2 = (smooth.d1(x + h) - smooth.d1(x - h)) / (2 * h);
        CHECK(std::abs(fd2 - smooth.d2(x)) <= 1e-5);
    }

    const auto ramp = ScalarTestFn::ramp(1.0, 0.6);
    const auto sramp = ScalarTestFn::mollified(ramp, lambda);
    for (double x = -3.0; x <= 5.0; x += 0.01)
        CHECK(std::abs(sramp(x) - ramp(x)) <= lambda);

    CHECK(ScalarTestFn::chop()(1.7) == 1.0);
    CHECK(ScalarTestFn::chop()(-1.7) == -1.0);
    CHECK(ScalarTestFn::chop()(0.3) == 0.3);
    CHECK_THROWS_AS(ScalarTestFn::ramp(0.0, -1.0), InvalidInput);
    CHECK_THROWS_AS(ScalarTestFn::mollified(ScalarTestFn::power(2), 0.1), InvalidInput);
}

TEST_CASE("tensor4 validation") {
    Rng rng({21, 0});
    const Matrix f1 = oracles::random_matrix(2, 2, rng);
    const Matrix f2 = oracles::random_matrix(2, 2, rng);
    const Tensor4 t = Tensor4::from_factors({f1, f2});
    const Matrix want = oracles::kron_loops(f1, f1.conjugate()) +
                        oracles::kron_loops(f2, f2.conjugate());
    CHECK((t.matrix - want).cwiseAbs().maxCoeff() <= 1e-12);

    Tensor4 broken = t;
    broken.matrix(0, 0) += 1.0;
    CHECK_THROWS_AS(broken.validate(), InvalidInput);
}
