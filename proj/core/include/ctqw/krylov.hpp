// krylov.hpp — Lanczos reduction onto the invariant subspace spanned by the
// powers of H applied to a seed state, plus the eigenspace-overlap construction
// of the same subspace used as an independent oracle.

#pragma once

#include <functional>

#include "ctqw/linalg.hpp"

namespace ctqw {

// Orthonormal basis of the invariant subspace, seed first, together with the
// tridiagonal coefficients of H in that basis: site energies alphas (E_1..E_m)
// and positive couplings betas (V_2..V_m).
struct KrylovBasis {
    Matrix vectors;          // ambient_dim x m, orthonormal columns, col 0 == seed
    Eigen::VectorXd alphas;  // m
    Eigen::VectorXd betas;   // m - 1, all > termination tolerance
    double termination_residual = 0.0; // norm of the rejected candidate beta_{m+1}

    Index m() const { return vectors.cols(); }
    Index ambient_dim() const { return vectors.rows(); }
};

inline constexpr double kLanczosTol = 1e-10;

// Lanczos with full reorthogonalization at every step (twice against the whole
// basis). Terminates when the candidate coupling drops below
// tol * max(1, ||H||_inf). Deterministic: identical inputs give bitwise
// identical coefficients.
KrylovBasis lanczos(const Operator& h, const Vector& seed, double tolerance = kLanczosTol);

// Matrix-free variant for operators too large to materialize; `norm_estimate`
// stands in for ||H||_inf in the termination test.
using ApplyFn = std::function<Vector(const Vector&)>;
KrylovBasis lanczos_apply(const ApplyFn& apply, Index dim, const Vector& seed,
                          double tolerance, double norm_estimate);

// m x m real symmetric tridiagonal (as a complex Hermitian Operator); entries
// beyond the band are exactly zero.
Operator reduced_hamiltonian(const KrylovBasis& basis);

struct ProjectionResult {
    Vector coords;   // <l_k|state>, dimension m
    double residual; // ||state - P state||
};

ProjectionResult project(const KrylovBasis& basis, const Vector& state);

// Rank-r orthogonal projector held as an orthonormal basis.
class Projector {
public:
    explicit Projector(Matrix orthonormal_columns);

    Index rank() const { return basis_.cols(); }
    Index ambient_dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Matrix matrix() const { return basis_ * basis_.adjoint(); }

    static Projector from_basis(const KrylovBasis& basis);

private:
    Matrix basis_;
};

// Span of one representative per eigenspace of H overlapping node w above a
// 1e-9 threshold; inside a degenerate group the representative is the
// normalized projection of |w> onto that eigenspace. Equal to the Lanczos
// subspace (tested as a property).
Projector lambda_subspace(const Operator& h, Index w);

bool subspaces_equal(const Projector& p1, const Projector& p2, double tolerance);

} // namespace ctqw
