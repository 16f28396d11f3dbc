#include "ctqw/transfer.hpp"

#include <cmath>

namespace ctqw {

namespace {

KrylovBasis target_basis(const Graph& g, int target) {
    Vector seed = Vector::Zero(g.n);
    seed(target) = 1.0;
    return lanczos(xy_single_excitation(g), seed);
}

} // namespace

Operator xy_single_excitation(const Graph& g) { return adjacency(g); }

double fidelity_bound(const Graph& g, int source, int target) {
    if (source < 0 || source >= g.n || target < 0 || target >= g.n)
        throw InvalidNode("fidelity_bound: node out of range");
    const KrylovBasis basis = target_basis(g, target);
    return basis.vectors.row(source).norm();
}

TransferBoundReport max_fidelity_scan(const TransferProblem& problem) {
    const Graph& g = problem.graph;
    if (problem.source < 0 || problem.source >= g.n || problem.target < 0 ||
        problem.target >= g.n)
        throw InvalidNode("max_fidelity_scan: node out of range");
    if (problem.source == problem.target)
        throw InvalidParameter("max_fidelity_scan: source equals target (trivial case)");

    const double t_window =
        problem.t_window > 0.0 ? problem.t_window : 20.0 * std::sqrt(static_cast<double>(g.n));
    const double dt = problem.dt > 0.0 ? problem.dt : t_window / 1e4;

    const KrylovBasis basis = target_basis(g, problem.target);
    const Operator h_red = reduced_hamiltonian(basis);
    const Vector coords0 = Vector(basis.vectors.row(problem.source).adjoint());

    TransferBoundReport report;
    report.bound = coords0.norm();
    report.t_window = t_window;
    report.dt = dt;

    StepEvolution evolution(h_red, coords0, dt);
    const auto n_steps = static_cast<std::size_t>(std::floor(t_window / dt)) + 1;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double f = std::abs(evolution.state()(0));
        if (f > report.f_max) {
            report.f_max = f;
            report.t_at_max = evolution.time();
        }
        evolution.advance();
    }
    report.tight = std::abs(report.bound - report.f_max) <= report.epsilon;
    return report;
}

std::pair<double, double> w_state_preparation(int levels, double t_window, double dt) {
    if (levels < 2) throw InvalidParameter("w_state_preparation: need at least 2 levels");
    if (t_window <= 0.0 || dt <= 0.0)
        throw InvalidParameter("w_state_preparation: t_window and dt must be positive");

    const Graph tree = binary_tree(levels);
    Vector root = Vector::Zero(tree.n);
    root(0) = 1.0;
    const KrylovBasis basis = lanczos(adjacency(tree), root);
    // Lanczos from the root yields the column states; the reduced chain has
    // `levels` sites and the last one is the leaf column (the W state).
    const Operator h_red = reduced_hamiltonian(basis);
    const Index last = basis.m() - 1;

    Vector coords0 = Vector::Zero(basis.m());
    coords0(0) = 1.0;
    StepEvolution evolution(h_red, coords0, dt);
    double best = 0.0;
    double t_best = 0.0;
    const auto n_steps = static_cast<std::size_t>(std::floor(t_window / dt)) + 1;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double overlap = std::norm(evolution.state()(last));
        if (overlap > best) {
            best = overlap;
            t_best = evolution.time();
        }
        evolution.advance();
    }
    return {best, t_best};
}

} // namespace ctqw
