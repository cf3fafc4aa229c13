#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ncmaj {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalar test functions applied through spectral calculus.
//
// chop(t)       clamps t to [-1, 1]
// hinge(t)      max(0, |t| - 1)
// ramp(r, s)    0 below r-s, linear up to 1 at r+s, 1 above
// power(K)      t^K
// mollified(.)  Gaussian smoothing of chop/hinge/ramp at width lambda,
//               evaluated in closed form from the normal CDF/PDF; smooth
//               kinds expose first/second/third derivatives.
// ---------------------------------------------------------------------------
class ScalarTestFn {
  public:
    enum class Kind { Chop, Hinge, Ramp, Power, MollifiedChop, MollifiedHinge, MollifiedRamp };

    static ScalarTestFn chop();
    static ScalarTestFn hinge();
    static ScalarTestFn ramp(double r, double s);
    static ScalarTestFn power(int k);
    static ScalarTestFn mollified(const ScalarTestFn& base, double lambda);

    double operator()(double t) const;
    double d1(double t) const;
    double d2(double t) const;
    double d3(double t) const;

    bool smooth() const;
    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }

  private:
    ScalarTestFn(Kind kind, double r, double s, int k, double lambda)
        : kind_(kind), r_(r), s_(s), k_(k), lambda_(lambda) {}

    Kind kind_;
    double r_ = 0.0;
    double s_ = 0.0;
    int k_ = 1;
    double lambda_ = 0.0;
};

// ---------------------------------------------------------------------------
// Basic matrix operations
// ---------------------------------------------------------------------------

// Largest singular value. Rejects non-finite entries.
double op_norm(const Matrix& a);

// |A| = (A A*)^{1/2}, Hermitian PSD.
Matrix abs_matrix(const Matrix& a);

bool all_finite(const Matrix& a);

// Hermitian within tol relative to op norm.
bool is_hermitian(const Matrix& a, double tol = 1e-10);

// Applies f to the eigenvalues of a Hermitian matrix. The input is
// symmetrized before diagonalization; non-Hermitian input is rejected.
Matrix spectral_apply(const ScalarTestFn& f, const Matrix& a, double herm_tol = 1e-10);

// Singular value clipping U min(S,1) V*; agrees with the Hermitian chop and
// leaves any matrix of operator norm at most 1 unchanged.
Matrix chop_general(const Matrix& a);

// Zero-pads an n x n matrix into the top-left block of a p x p matrix.
Matrix embed_iota(const Matrix& a, int p);

// Kronecker product, row-blocked convention: (A (x) B)_{(i-1)nB+k,(j-1)nB+l} = A_ij B_kl.
Matrix kron(const Matrix& a, const Matrix& b);

// Partial traces of an n^2 x n^2 matrix under the fixed index convention
// (i-1)n+k for the pair (i, k). Tr_2(A (x) B) = A Tr(B), Tr_1(A (x) B) = B Tr(A).
Matrix partial_trace_2(const Matrix& x);
Matrix partial_trace_1(const Matrix& x);

// Product of vector-valued matrices, stored as component lists:
// (U (.) V)_{(i-1)n+k,(j-1)n+l} = <U_ij, V_kl> = sum_a U^a_ij conj(V^a_kl).
Matrix odot(const std::vector<Matrix>& u_components, const std::vector<Matrix>& v_components);

// Unitary factor maximizing Re Tr(C X) over unitaries (thin polar via SVD).
// For a wide dn x d coefficient C the result is the optimal d x dn co-isometry.
Matrix polar_maximizer(const Matrix& c);

// Sum of singular values.
double nuclear_norm(const Matrix& c);

std::vector<double> singular_values(const Matrix& a);

// ---------------------------------------------------------------------------
// PSD 4-tensor: an n^2 x n^2 matrix, optionally with factors M_i such that
// matrix = sum_i M_i (x) conj(M_i).
// ---------------------------------------------------------------------------
struct Tensor4 {
    int n = 0;
    Matrix matrix;
    std::optional<std::vector<Matrix>> psd_factors;

    static Tensor4 from_matrix(Matrix m);
    static Tensor4 from_factors(std::vector<Matrix> factors);

    void validate() const;
};

// Embedding of a factored 4-tensor: sum_i iota(M_i) (x) conj(iota(M_i)).
Tensor4 embed_iota_tensor(const Tensor4& t, int p);

}  // namespace ncmaj
