#include "ctqw/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>

namespace ctqw {

namespace {

double max_abs_diff_from_adjoint(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

Matrix Operator::hermitian_part() const {
    if (structure == Structure::Hermitian) return mat;
    Matrix h = mat;
    h(trap, trap) += Complex(0.0, kappa);
    return h;
}

Operator Operator::hermitian(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw InvalidParameter("Operator: matrix must be square with dim >= 1");
    if (max_abs_diff_from_adjoint(m) > tol::structure)
        throw NonHermitianInput("Operator: matrix is not Hermitian within 1e-12");
    Operator op;
    op.mat = std::move(m);
    op.structure = Structure::Hermitian;
    return op;
}

Operator Operator::hermitian_plus_trap(Matrix hermitian_part, double kappa, Index trap) {
    if (hermitian_part.rows() != hermitian_part.cols() || hermitian_part.rows() < 1)
        throw InvalidParameter("Operator: matrix must be square with dim >= 1");
    if (trap < 0 || trap >= hermitian_part.rows())
        throw InvalidNode("Operator: trap index out of range");
    if (kappa <= 0.0)
        throw InvalidParameter("Operator: trapping rate must be positive");
    if (max_abs_diff_from_adjoint(hermitian_part) > tol::structure)
        throw NonHermitianInput("Operator: Hermitian part fails the 1e-12 check");
    Operator op;
    op.mat = std::move(hermitian_part);
    op.mat(trap, trap) -= Complex(0.0, kappa);
    op.structure = Structure::HermitianPlusTrap;
    op.kappa = kappa;
    op.trap = trap;
    return op;
}

Spectrum hermitian_eig(const Operator& m) {
    if (!m.is_hermitian())
        throw NonHermitianInput("hermitian_eig: operator is not tagged Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.mat);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("hermitian_eig: iteration failed to converge");
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<std::pair<Index, Index>> degenerate_groups(const Eigen::VectorXd& eigenvalues) {
    std::vector<std::pair<Index, Index>> groups;
    const Index n = eigenvalues.size();
    if (n == 0) return groups;
    const double scale = std::max({1.0, std::abs(eigenvalues(0)), std::abs(eigenvalues(n - 1))});
    const double gap = tol::eigen_residual * scale;
    Index first = 0;
    for (Index k = 1; k < n; ++k) {
        if (eigenvalues(k) - eigenvalues(k - 1) > gap) {
            groups.emplace_back(first, k);
            first = k;
        }
    }
    groups.emplace_back(first, n);
    return groups;
}

namespace {

// Padé numerator/denominator split: U odd part (premultiplied by A), V even part.
void pade_3(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
    const double b[] = {120., 60., 12., 1.};
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    u = a * (b[3] * a2 + b[1] * id);
    v = b[2] * a2 + b[0] * id;
}

void pade_5(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
    const double b[] = {30240., 15120., 3360., 420., 30., 1.};
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    const Matrix a4 = a2 * a2;
    u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade_7(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
    const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade_9(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
    const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                        2162160.,     110880.,     3960.,       90.,        1.};
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix a8 = a6 * a2;
    u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade_13(const Matrix& a, const Matrix& a2, Matrix& u, Matrix& v) {
    const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                        1187353796428800.,  129060195264000.,   10559470521600.,
                        670442572800.,      33522128640.,       1323241920.,
                        40840800.,          960960.,            16380.,
                        182.,               1.};
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

} // namespace

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("expm: matrix must be square");
    if (a.rows() == 0)
        throw InvalidParameter("expm: empty matrix");

    // Order thresholds in the 1-norm (Higham 2005).
    const double theta3 = 1.495585217958292e-2;
    const double theta5 = 2.539398330063230e-1;
    const double theta7 = 9.504178996162932e-1;
    const double theta9 = 2.097847961257068e0;
    const double theta13 = 5.371920351148152e0;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

    Matrix u, v;
    int squarings = 0;
    if (norm1 <= theta9) {
        const Matrix a2 = a * a;
        if (norm1 <= theta3)
            pade_3(a, a2, u, v);
        else if (norm1 <= theta5)
            pade_5(a, a2, u, v);
        else if (norm1 <= theta7)
            pade_7(a, a2, u, v);
        else
            pade_9(a, a2, u, v);
    } else {
        if (norm1 > theta13)
            squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        const Matrix scaled = a / std::pow(2.0, squarings);
        const Matrix a2 = scaled * scaled;
        pade_13(scaled, a2, u, v);
    }

    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Matrix propagator(const Operator& m, double t) {
    if (t < 0.0)
        throw InvalidParameter("propagator: t must be non-negative");
    return expm(Complex(0.0, -t) * m.mat);
}

Vector expm_mul(const Operator& m, const Vector& v, double t) {
    if (m.dim() != v.size())
        throw DimensionMismatch("expm_mul: operator and vector dimensions differ");
    if (t < 0.0)
        throw InvalidParameter("expm_mul: t must be non-negative");
    return propagator(m, t) * v;
}

Vector expm_mul_spectral(const Spectrum& s, const Vector& v, double t) {
    if (s.eigenvectors.rows() != v.size())
        throw DimensionMismatch("expm_mul_spectral: dimensions differ");
    Vector coeffs = s.eigenvectors.adjoint() * v;
    for (Index k = 0; k < coeffs.size(); ++k)
        coeffs(k) *= std::exp(Complex(0.0, -s.eigenvalues(k) * t));
    return s.eigenvectors * coeffs;
}

double integrate_trace(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size())
        throw DimensionMismatch("integrate_trace: times and values differ in length");
    if (times.empty())
        throw InvalidParameter("integrate_trace: no samples");
    double sum = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (dt <= 0.0)
            throw NonMonotonicTimes("integrate_trace: times must be strictly increasing");
        sum += 0.5 * dt * (values[k] + values[k - 1]);
    }
    return sum;
}

StepEvolution::StepEvolution(const Operator& m, Vector initial, double dt)
    : state_(std::move(initial)), dt_(dt) {
    if (m.dim() != state_.size())
        throw DimensionMismatch("StepEvolution: operator and state dimensions differ");
    if (dt <= 0.0)
        throw InvalidParameter("StepEvolution: dt must be positive");
    step_ = propagator(m, dt);
}

void StepEvolution::advance() {
    state_ = step_ * state_;
    ++steps_;
}

} // namespace ctqw
