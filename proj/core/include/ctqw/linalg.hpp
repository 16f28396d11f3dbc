// linalg.hpp — dense complex kernels: Hermitian eigendecomposition, matrix
// exponential (scaling-and-squaring Padé), grid evolution, trapezoid quadrature.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "ctqw/errors.hpp"

namespace ctqw {

using Complex = std::complex<double>;
using Vector  = Eigen::VectorXcd;
using Matrix  = Eigen::MatrixXcd;
using Index   = Eigen::Index;

// Fixed tolerances; acceptance tests rely on these being constants.
namespace tol {
inline constexpr double structure      = 1e-12; // Hermiticity, normalization
inline constexpr double algebra        = 1e-10; // orthonormality, path agreement
inline constexpr double eigen_residual = 1e-9;  // eigensolver residuals, degeneracy grouping
} // namespace tol

enum class Structure {
    Hermitian,
    HermitianPlusTrap, // M = H - i*kappa*|trap><trap| with H Hermitian
};

// Square complex matrix with a declared structure. Construct through the
// factories, which validate the declared structure.
struct Operator {
    Matrix mat;
    Structure structure = Structure::Hermitian;
    double kappa = 0.0; // HermitianPlusTrap only
    Index trap = -1;    // HermitianPlusTrap only

    Index dim() const { return mat.rows(); }
    bool is_hermitian() const { return structure == Structure::Hermitian; }

    // Hermitian part (strips the trap term when present).
    Matrix hermitian_part() const;

    static Operator hermitian(Matrix m);
    static Operator hermitian_plus_trap(Matrix hermitian_part, double kappa, Index trap);
};

// Eigenvalues ascending; eigenvector columns orthonormal.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

// Dense Hermitian eigendecomposition. Backed by Eigen's self-adjoint solver
// (Householder tridiagonalization + implicit-shift QL), deterministic for
// identical input. Throws NonHermitianInput / ConvergenceFailure.
Spectrum hermitian_eig(const Operator& m);

// Group eigenvalues into degenerate clusters: indices [first, last) per group,
// chained by gaps <= eigen_residual * max(1, spectral range).
std::vector<std::pair<Index, Index>> degenerate_groups(const Eigen::VectorXd& eigenvalues);

// e^A for a general square complex matrix. Scaling-and-squaring with a fixed
// (13,13) Padé approximant (lower orders for small norms); safe for the
// non-normal trap Hamiltonians where a spectral exponential is not.
Matrix expm(const Matrix& a);

// e^{-i M t}. t >= 0.
Matrix propagator(const Operator& m, double t);

// e^{-i M t} v via the general Padé path.
Vector expm_mul(const Operator& m, const Vector& v, double t);

// Spectral fast path for Hermitian operators: V e^{-i diag(lambda) t} V^dag v.
// Must agree with expm_mul within tol::algebra (tested).
Vector expm_mul_spectral(const Spectrum& s, const Vector& v, double t);

// Trapezoid rule over strictly increasing sample times.
double integrate_trace(std::span<const double> times, std::span<const double> values);

// Fixed-step evolution under e^{-iMt}: the step matrix is a single Padé
// exponential, so stiff (large-gap) reduced Hamiltonians are handled exactly
// at every grid point regardless of dt.
class StepEvolution {
public:
    StepEvolution(const Operator& m, Vector initial, double dt);

    void advance();
    const Vector& state() const { return state_; }
    double time() const { return static_cast<double>(steps_) * dt_; }
    long steps() const { return steps_; }

private:
    Matrix step_;
    Vector state_;
    double dt_;
    long steps_ = 0;
};

} // namespace ctqw
