#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncmaj/linalg.hpp"
#include "ncmaj/mc.hpp"
#include "ncmaj/rng.hpp"

namespace ncmaj {

// Tagged descriptor of a random-matrix distribution.
//
//  rademacher          uniform sign in {-1, +1}
//  haar_unitary(p)     p x p Haar unitary, sampled by QR of a complex Ginibre
//                      matrix with the R-diagonal phase correction
//  gaussian_frame(V)   G = sum_i g_i V_i with i.i.d. standard complex
//                      Gaussians; requires sum V_i V_i* = sum V_i* V_i = I
//  wigner_gue(n)       the frame ensemble over the orthonormal matrix basis
//                      scaled so that E G G* = I (i.i.d. entries of
//                      variance 1/n)
//  embed_rotate(D, p)  iota(G) H with an independent inner draw G ~ D and a
//                      p x p Haar unitary H
struct EnsembleSpec {
    enum class Kind { Rademacher, HaarUnitary, GaussianFrame, WignerGue, EmbedRotate };

    Kind kind = Kind::Rademacher;
    int dim = 1;  // matrix dimension of a draw (p for haar, n otherwise)
    std::vector<Matrix> frame;
    std::shared_ptr<const EnsembleSpec> inner;

    static EnsembleSpec rademacher();
    static EnsembleSpec haar_unitary(int p);
    static EnsembleSpec gaussian_frame(std::vector<Matrix> frame);
    static EnsembleSpec wigner_gue(int n);
    static EnsembleSpec embed_rotate(EnsembleSpec inner, int p);

    std::string kind_name() const;
};

// One draw, fully materialized (1 x 1 matrix for rademacher).
Matrix sample(const EnsembleSpec& spec, Rng& rng);

Matrix ginibre(int rows, int cols, Rng& rng);  // i.i.d. standard complex entries
Matrix haar_unitary_sample(int p, Rng& rng);

// First n rows of a Haar p x p unitary (uniform co-isometry).
Matrix stiefel_rows_sample(int n, int p, Rng& rng);

// Monte Carlo estimate of ||E (G G*)^K||; stderr is the Frobenius norm of the
// entrywise standard errors of the matrix mean.
MCEstimate check_moment_bound(const EnsembleSpec& spec, int K, long long samples,
                              RngStream rng, int workers = 0);

// Monte Carlo estimate of E ||iota(A) H iota(B)||^2 for PSD A, B and a Haar
// p x p unitary H.
MCEstimate haar_block_damping_check(const Matrix& a, const Matrix& b, int p,
                                    long long samples, RngStream rng, int workers = 0);

}  // namespace ncmaj
