#pragma once

#include <optional>

#include "nhqfi/common.hpp"

// Kernels for non-Hermitian tridiagonal matrices T with diagonal a,
// superdiagonal b (T(i,i+1)) and subdiagonal c (T(i+1,i)).
//
// When every b_i c_i != 0, T = D S D^{-1} with S complex symmetric
// (off-diagonals sqrt(b_i c_i)) and D diagonal. D is kept as complex
// logarithms so that e^{+-kappa N} scalings of skin-effect chains never
// overflow. S is then diagonalized by complex-symmetric implicit QL.
namespace nhqfi::tridiag {

struct Symmetrized {
    CVec d;          // diagonal of S
    CVec e;          // off-diagonal of S (length n-1)
    CVec log_scale;  // log D_jj, log_scale(0) = 0
};

std::optional<Symmetrized> symmetrize(const CVec& a, const CVec& b, const CVec& c);

// Eigenvalue estimates of the complex symmetric tridiagonal (d, e) by
// implicit QL. Complex orthogonal rotations are unbounded, so accuracy can
// degrade on strongly non-normal inputs; clean = false flags a near-isotropic
// rotation or an iteration cap. O(n^2).
struct QlResult {
    CVec values;
    bool clean = true;
};
QlResult cs_ql_eigenvalues(CVec d, CVec e, int max_iter = 60);

// Newton ratio p(lambda)/p'(lambda) for p = det(T - lambda I), with a the
// diagonal and beta_i = T(i,i+1) T(i+1,i). O(n).
cplx newton_ratio(const CVec& a, const CVec& beta, cplx lambda, double floor);

// Ehrlich-Aberth simultaneous refinement of all roots of det(T - lambda I),
// started from `lambda`. Returns the number of sweeps, or -1 when the cap was
// reached before every correction fell below 4 eps (|lambda| + ||T||).
int aberth_refine(const CVec& a, const CVec& beta, CVec& lambda, int max_sweeps = 200);

struct Eigenvalues {
    CVec values;
    bool converged = true;
    int sweeps = 0;
    bool ql_clean = true;
};

// Full spectrum of the tridiagonal (a, b, c): QL on the symmetrized form for
// starting values, Aberth polishing against the original recurrence. O(n^2).
// Returns nullopt when some b_i c_i = 0.
std::optional<Eigenvalues> eigenvalues(const CVec& a, const CVec& b, const CVec& c);

// One eigenvector of the general tridiagonal (lo, diag, up) at eigenvalue
// estimate lambda by inverse iteration with partially pivoted LU. The result
// has unit max-norm. O(n) per call.
CVec inverse_iteration(const CVec& lo, const CVec& diag, const CVec& up, cplx lambda, int iterations = 3);

}  // namespace nhqfi::tridiag
