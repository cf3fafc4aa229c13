#pragma once

#include <optional>
#include <utility>

#include "ncmaj/estimators.hpp"

namespace ncmaj {

// Element of U_n(C^N): an n x n matrix of C^N vectors stored as N component
// matrices, constrained by sum_a V_a V_a* = sum_a V_a* V_a = I.
struct VectorUnitary {
    std::vector<Matrix> components;
    int n = 0;
    int N = 0;

    static VectorUnitary from_components(std::vector<Matrix> components, double tol = 1e-8);
    // [X, 0, ..., 0] for a unitary X
    static VectorUnitary embedded(const Matrix& x, int N);

    Matrix odot_self() const;  // V (.) V, an n^2 x n^2 matrix
};

Tensor4 build_psd_tensor(const std::vector<Matrix>& factors);
Tensor4 zero_psd_tensor(int n);

// Re Tr(M (X (x) conj(Y)))
double ncgi_objective(const Tensor4& m, const Matrix& x, const Matrix& y);
// sum_i |Tr(M_i X)|^2 for a factored tensor; equals ncgi_objective(m, x, x)
double ncgi_symmetric_objective(const Tensor4& m, const Matrix& x);

struct AscentOptions {
    int restarts = 20;
    int max_iters = 500;
    double tol = 1e-10;
};

struct AscentResult {
    double value = 0.0;
    Matrix x;
    Matrix y;
    bool converged = false;
    bool monotone = true;
    int sweeps = 0;
};

// Alternating polar ascent for OPT(M) = sup_{X,Y unitary} Re Tr(M(X (x) conj(Y))).
// Each block update solves its linear subproblem exactly, so the value is a
// certified lower bound on OPT(M). Additional starting points may be supplied.
AscentResult opt_unitary_ascent(const Tensor4& m, const AscentOptions& opts, RngStream rng,
                                const std::vector<std::pair<Matrix, Matrix>>& extra_inits = {});

// Same ascent with Y constrained equal to X, on the factored objective.
AscentResult opt_symmetric_ascent(const Tensor4& m, const AscentOptions& opts, RngStream rng,
                                  const std::vector<Matrix>& extra_inits = {});

// Runs both ascents and cross-seeds each with the other's solution, so that
// the two values can be compared as approximations of the same optimum.
struct SymmetricFreeComparison {
    AscentResult free_result;
    AscentResult symmetric_result;
};
SymmetricFreeComparison compare_symmetric_free(const Tensor4& m, const AscentOptions& opts,
                                               RngStream rng);

// Heuristic ascent for sup over U, V in U_n(C^N) of Re Tr(M (U (.) V)), with
// alternating polar normalization enforcing both constraints. Non-certified.
struct VectorAscentResult {
    double value = 0.0;
    VectorUnitary u;
    VectorUnitary v;
};
VectorAscentResult vector_unitary_ascent(const Tensor4& m, int N, const AscentOptions& opts,
                                         RngStream rng);

// Dictatorship-test objective, level-1 Fourier form
//   OBJ(f, h) = sum_{|S|=1} Tr((V (.) V) M (f_hat(S) (x) conj(h_hat(S))))
// with the partial-trace operator route checked against it.
struct DictObjective {
    Complex fourier_route;
    Complex operator_route;
};
DictObjective obj_dict_test_routes(const CubeFunction& f, const CubeFunction& h, const Tensor4& m,
                                   const VectorUnitary& v);
double obj_dict_test(const CubeFunction& f, const CubeFunction& h, const Tensor4& m,
                     const VectorUnitary& v, double route_tol = 1e-9);

// The operator B(h): a cube function supported on singletons with
// coefficients Tr_2((V (.) V) M (I (x) conj(h_hat(S)))).
CubeFunction bnd_operator(const CubeFunction& h, const Tensor4& m, const VectorUnitary& v);

// Heuristic lower bound on C_tau = sup over low-influence, norm-bounded f of
// OBJ(f, f). Report-only: the supremum itself is not certified.
struct CtauReport {
    double lower_bound = 0.0;
    double completeness = 0.0;  // Tr((V (.) V) M), the dictator value
    double opt_value = 0.0;     // best unitary ascent value for OPT(M)
    double soundness_rhs = 0.0; // (1 + eps) * opt_value
    int best_support = 0;       // number of level-1 coefficients used
    double tau = 0.0;
};
CtauReport ctau_search(const Tensor4& m, const VectorUnitary& v, double tau, int m_vars,
                       const AscentOptions& opts, RngStream rng, double eps = 0.1);

// PSD block instance for the positive semidefinite variant: an nd x nd
// Hermitian PSD matrix read as n x n blocks of size d x d.
struct PsdBlockInstance {
    int n = 0;
    int d = 0;
    Matrix m;

    static PsdBlockInstance from_matrix(int n, int d, Matrix m, double tol = 1e-8);
    static PsdBlockInstance random(int n, int d, Rng& rng);

    Matrix block(int i, int j) const;
};

// Objective sum_ij Tr((M_ij)^T X_i X_j*), real for Hermitian PSD M.
double psd_objective(const PsdBlockInstance& inst, const std::vector<Matrix>& tuple);

struct PsdVariantResult {
    double value = 0.0;
    std::vector<Matrix> tuple;
    bool converged = false;
    bool monotone = true;
};

// Block-coordinate polar ascent over unitaries (constrained) or d x dn
// co-isometries (relaxed).
PsdVariantResult psd_variant_solve(const PsdBlockInstance& inst, bool constrained,
                                   const AscentOptions& opts, RngStream rng,
                                   const std::vector<std::vector<Matrix>>& extra_inits = {});

// Rounds a relaxed tuple to unitaries with one shared Gaussian draw.
std::vector<Matrix> round_relaxation(const std::vector<Matrix>& relaxed, Rng& rng);

// MC estimate of K(d) = (E (1/d) sum_i singular_value_i(G))^2 for a d x d
// complex Gaussian G with entry variance 1/d; delta-method standard error.
MCEstimate estimate_Kd(int d, long long samples, RngStream rng, int workers = 0);

// Unitary polar factor X of A = X |A|.
Matrix unitary_polar_factor(const Matrix& a);

}  // namespace ncmaj
