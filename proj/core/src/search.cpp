#include "ctqw/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ctqw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPeakSlack = 1e-3; // relative window below the grid maximum

Vector uniform_state(Index n) {
    return Vector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

std::pair<std::size_t, double> detect_peak(const std::vector<double>& p) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
        if (p[k] > p[best]) best = k;
    const double floor = p[best] * (1.0 - kPeakSlack);
    for (std::size_t k = 1; k + 1 < p.size(); ++k)
        if (p[k] >= p[k - 1] && p[k] >= p[k + 1] && p[k] >= floor) return {k, p[k]};
    return {best, p[best]};
}

} // namespace

Operator search_hamiltonian(const Graph& g, int w, double gamma) {
    if (w < 0 || w >= g.n) throw InvalidNode("search_hamiltonian: solution node out of range");
    if (gamma <= 0.0) throw InvalidParameter("search_hamiltonian: gamma must be positive");
    Matrix h = (-gamma) * adjacency(g).mat;
    h(w, w) -= 1.0;
    return Operator::hermitian(std::move(h));
}

double optimal_gamma(const FamilySpec& spec, SolutionLocation location) {
    switch (spec.family) {
    case Family::Complete:
        return 1.0 / static_cast<double>(spec.n);
    case Family::CompleteBipartite:
        // (N sqrt(alpha(1-alpha)))^{-1} with alpha = m1/N
        return 1.0 / std::sqrt(static_cast<double>(spec.m1) * static_cast<double>(spec.m2));
    case Family::Star:
        if (location == SolutionLocation::Center)
            return 1.0 / std::sqrt(static_cast<double>(spec.n - 1));
        return 1.0 / std::sqrt(static_cast<double>(spec.n));
    default:
        throw UnsupportedFamily("optimal_gamma: no closed form for this family; use gamma_scan");
    }
}

SearchPrediction search_prediction(const FamilySpec& spec, SolutionLocation location) {
    switch (spec.family) {
    case Family::Complete: {
        const double n = static_cast<double>(spec.n);
        return {kPi * std::sqrt(n) / 2.0, 1.0};
    }
    case Family::CompleteBipartite: {
        const double n = static_cast<double>(spec.m1 + spec.m2);
        const double alpha = (location == SolutionLocation::Partition2)
                                 ? static_cast<double>(spec.m2) / n
                                 : static_cast<double>(spec.m1) / n;
        const double root = std::sqrt(alpha * (1.0 - alpha));
        return {kPi * std::sqrt(alpha * n / 2.0), 0.5 + root};
    }
    case Family::Star: {
        const double n = static_cast<double>(spec.n);
        if (location == SolutionLocation::Center) return {kPi / 2.0, 1.0};
        return {kPi * std::sqrt(n / 2.0), 0.5};
    }
    default:
        throw UnsupportedFamily("search_prediction: no closed form for this family");
    }
}

double two_phase_expected_runtime(const FamilySpec& spec) {
    if (spec.family != Family::CompleteBipartite && spec.family != Family::Star)
        throw UnsupportedFamily("two_phase_expected_runtime: complete bipartite graphs only");
    const double m1 = (spec.family == Family::Star) ? static_cast<double>(spec.n - 1)
                                                    : static_cast<double>(spec.m1);
    const double m2 = (spec.family == Family::Star) ? 1.0 : static_cast<double>(spec.m2);
    const double n = m1 + m2;
    const double alpha = m1 / n;
    return kPi * std::sqrt(n) * std::sqrt(1.0 + 2.0 * std::sqrt(alpha * (1.0 - alpha)));
}

SearchResult run_search(const SearchProblem& problem, double t_max, double dt) {
    if (t_max <= 0.0 || dt <= 0.0)
        throw InvalidParameter("run_search: t_max and dt must be positive");
    if (dt > t_max / 100.0)
        throw InvalidParameter("run_search: dt must be at most t_max/100");

    const Graph& g = problem.graph;
    const Operator h = search_hamiltonian(g, problem.solution, problem.gamma);

    Vector initial = problem.initial ? *problem.initial : uniform_state(g.n);
    if (initial.size() != g.n)
        throw DimensionMismatch("run_search: initial state dimension differs from graph");
    if (std::abs(initial.norm() - 1.0) > tol::structure)
        throw SeedNotNormalized("run_search: initial state must be normalized");

    Vector seed = Vector::Zero(g.n);
    seed(problem.solution) = 1.0;
    const KrylovBasis basis = lanczos(h, seed);

    SearchResult result;
    result.gamma_used = problem.gamma;
    result.subspace_dim = basis.m();
    result.reduced = basis.m() < g.n;

    Operator h_evolve = Operator::hermitian(Matrix::Zero(1, 1));
    Vector psi0;
    Index target = 0;
    if (result.reduced) {
        auto projection = project(basis, initial);
        result.initial_residual = projection.residual;
        h_evolve = reduced_hamiltonian(basis);
        psi0 = std::move(projection.coords);
        target = 0; // first basis vector is |w>
    } else {
        h_evolve = h;
        psi0 = initial;
        target = problem.solution;
    }

    const auto n_steps = static_cast<std::size_t>(std::floor(t_max / dt)) + 1;
    result.trace.times.reserve(n_steps);
    result.trace.values.reserve(n_steps);
    StepEvolution evolution(h_evolve, psi0, dt);
    for (std::size_t k = 0; k < n_steps; ++k) {
        result.trace.times.push_back(evolution.time());
        result.trace.values.push_back(std::norm(evolution.state()(target)));
        evolution.advance();
    }

    const auto [peak_index, peak_value] = detect_peak(result.trace.values);
    result.t_peak = result.trace.times[peak_index];
    result.p_peak = peak_value;
    return result;
}

std::pair<double, SearchResult> gamma_scan(const SearchProblem& base,
                                           std::span<const double> gammas, double t_max,
                                           double dt) {
    if (gammas.empty()) throw InvalidParameter("gamma_scan: empty grid");
    std::optional<std::pair<double, SearchResult>> best;
    for (const double gamma : gammas) {
        SearchProblem problem = base;
        problem.gamma = gamma;
        SearchResult result = run_search(problem, t_max, dt);
        if (!best || result.p_peak > best->second.p_peak ||
            (result.p_peak == best->second.p_peak && gamma < best->first))
            best = {gamma, std::move(result)};
    }
    return std::move(*best);
}

Operator broken_link_reduced_search(int n, int k, bool link_at_solution, double gamma,
                                    std::uint64_t seed) {
    if (n < 4) throw InvalidParameter("broken_link_reduced_search: n too small");
    if (k < 0 || k > n / 2)
        throw ConstraintUnsatisfiable(
            "broken_link_reduced_search: k must satisfy k <= floor(N/2)");
    if (link_at_solution && k < 1)
        throw InvalidParameter("broken_link_reduced_search: need k >= 1 to break a solution link");

    const int w = 0;
    const Graph g = complete(n);
    std::vector<Edge> broken;
    if (link_at_solution) {
        const int partner = 1;
        broken.emplace_back(w, partner);
        if (k > 1) {
            BreakConstraint rest = BreakConstraint::matching();
            rest.avoid = {w, partner};
            auto more = sample_broken(g, k - 1, rest, seed);
            broken.insert(broken.end(), more.begin(), more.end());
        }
    } else {
        broken = sample_broken(g, k, BreakConstraint::matching_avoiding(w), seed);
    }

    const Graph damaged = remove_links(g, broken);
    const Operator h = search_hamiltonian(damaged, w, gamma);
    Vector seed_state = Vector::Zero(n);
    seed_state(w) = 1.0;
    const KrylovBasis basis = lanczos(h, seed_state);

    Index expected = 3;
    if (k == 0)
        expected = 2;
    else if (link_at_solution && k >= 2)
        expected = 4;
    if (basis.m() != expected) {
        std::ostringstream msg;
        msg << "broken_link_reduced_search: reduced dimension " << basis.m() << ", expected "
            << expected;
        throw Error(msg.str());
    }
    return reduced_hamiltonian(basis);
}

} // namespace ctqw
