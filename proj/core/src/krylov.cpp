#include "ctqw/krylov.hpp"

#include <cmath>
#include <vector>

namespace ctqw {

namespace {

KrylovBasis lanczos_impl(const ApplyFn& apply, Index dim, const Vector& seed, double tolerance,
                         double norm_scale) {
    if (seed.size() != dim)
        throw DimensionMismatch("lanczos: seed dimension differs from operator");
    if (std::abs(seed.norm() - 1.0) > tol::structure)
        throw SeedNotNormalized("lanczos: seed must be normalized to 1e-12");
    if (tolerance <= 0.0)
        throw InvalidParameter("lanczos: tolerance must be positive");

    const double cutoff = tolerance * std::max(1.0, norm_scale);

    std::vector<Vector> basis;
    std::vector<double> alphas;
    std::vector<double> betas;
    basis.push_back(seed);

    double residual = 0.0;
    for (Index k = 0; k < dim; ++k) {
        Vector w = apply(basis.back());
        const double alpha = std::real(basis.back().dot(w));
        alphas.push_back(alpha);

        // full reorthogonalization, applied twice
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& v : basis) w -= v.dot(w) * v;

        const double beta = w.norm();
        residual = beta;
        if (beta <= cutoff || static_cast<Index>(basis.size()) == dim) break;
        betas.push_back(beta);
        basis.push_back(w / beta);
    }

    KrylovBasis out;
    out.vectors.resize(dim, static_cast<Index>(basis.size()));
    for (Index j = 0; j < out.vectors.cols(); ++j)
        out.vectors.col(j) = basis[static_cast<std::size_t>(j)];
    out.alphas = Eigen::Map<const Eigen::VectorXd>(alphas.data(), static_cast<Index>(alphas.size()));
    out.betas = Eigen::Map<const Eigen::VectorXd>(betas.data(), static_cast<Index>(betas.size()));
    out.termination_residual = residual;
    return out;
}

} // namespace

KrylovBasis lanczos(const Operator& h, const Vector& seed, double tolerance) {
    if (!h.is_hermitian())
        throw NonHermitianInput("lanczos: operator must be Hermitian (trap terms are added in "
                                "reduced coordinates)");
    const double norm_inf = h.mat.cwiseAbs().rowwise().sum().maxCoeff();
    return lanczos_impl([&h](const Vector& v) { return Vector(h.mat * v); }, h.dim(), seed,
                        tolerance, norm_inf);
}

KrylovBasis lanczos_apply(const ApplyFn& apply, Index dim, const Vector& seed, double tolerance,
                          double norm_estimate) {
    return lanczos_impl(apply, dim, seed, tolerance, norm_estimate);
}

Operator reduced_hamiltonian(const KrylovBasis& basis) {
    const Index m = basis.m();
    Matrix h = Matrix::Zero(m, m);
    for (Index k = 0; k < m; ++k) h(k, k) = basis.alphas(k);
    for (Index k = 0; k + 1 < m; ++k) {
        h(k, k + 1) = basis.betas(k);
        h(k + 1, k) = basis.betas(k);
    }
    return Operator::hermitian(std::move(h));
}

ProjectionResult project(const KrylovBasis& basis, const Vector& state) {
    if (state.size() != basis.ambient_dim())
        throw DimensionMismatch("project: state dimension differs from ambient space");
    Vector coords = basis.vectors.adjoint() * state;
    const double residual = (state - basis.vectors * coords).norm();
    return {std::move(coords), residual};
}

Projector::Projector(Matrix orthonormal_columns) : basis_(std::move(orthonormal_columns)) {
    if (basis_.rows() < basis_.cols())
        throw InvalidParameter("Projector: more columns than ambient dimension");
}

Projector Projector::from_basis(const KrylovBasis& basis) { return Projector(basis.vectors); }

Projector lambda_subspace(const Operator& h, Index w) {
    if (w < 0 || w >= h.dim())
        throw InvalidNode("lambda_subspace: node index out of range");
    const Spectrum spectrum = hermitian_eig(h);
    const auto groups = degenerate_groups(spectrum.eigenvalues);

    const double overlap_threshold = 1e-9;
    std::vector<Vector> reps;
    for (const auto& [first, last] : groups) {
        // projection of |w> onto the eigenspace = sum_k v_k <v_k|w>
        Vector p = Vector::Zero(h.dim());
        for (Index k = first; k < last; ++k)
            p += spectrum.eigenvectors.col(k) * std::conj(spectrum.eigenvectors(w, k));
        const double norm = p.norm();
        if (norm > overlap_threshold) reps.push_back(p / norm);
    }

    Matrix basis(h.dim(), static_cast<Index>(reps.size()));
    for (Index j = 0; j < basis.cols(); ++j) basis.col(j) = reps[static_cast<std::size_t>(j)];
    return Projector(std::move(basis));
}

bool subspaces_equal(const Projector& p1, const Projector& p2, double tolerance) {
    if (p1.ambient_dim() != p2.ambient_dim())
        throw DimensionMismatch("subspaces_equal: ambient dimensions differ");
    return (p1.matrix() - p2.matrix()).cwiseAbs().maxCoeff() <= tolerance;
}

} // namespace ctqw
