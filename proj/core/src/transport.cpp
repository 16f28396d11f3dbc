#include "ctqw/transport.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "ctqw/rng.hpp"

namespace ctqw {

namespace {

constexpr double kSurvivalCut = 1e-6; // in-subspace survival norm^2 at truncation

void check_problem(const TransportProblem& p) {
    if (p.trap < 0 || p.trap >= p.graph.n) throw InvalidNode("transport: trap node out of range");
    if (p.kappa <= 0.0) throw InvalidParameter("transport: kappa must be positive");
    if (p.initial.is_pure()) {
        if (p.initial.pure_state().size() != p.graph.n)
            throw DimensionMismatch("transport: initial state dimension differs from graph");
        if (std::abs(p.initial.pure_state().norm() - 1.0) > tol::structure)
            throw SeedNotNormalized("transport: initial state must be normalized");
    } else {
        for (const auto& [weight, node] : p.initial.components())
            if (node < 0 || node >= p.graph.n)
                throw InvalidNode("transport: mixture node out of range");
    }
}

KrylovBasis trap_basis(const TransportProblem& p) {
    Vector seed = Vector::Zero(p.graph.n);
    seed(p.trap) = 1.0;
    return lanczos(adjacency(p.graph), seed);
}

Operator reduced_with_trap(const KrylovBasis& basis, double kappa) {
    return Operator::hermitian_plus_trap(reduced_hamiltonian(basis).mat, kappa, 0);
}

struct TrapIntegrals {
    double absorbed = 0.0;      // 2*kappa * int p dt
    double absorbed_time = 0.0; // 2*kappa * int t p dt
    bool converged = true;
    double t_final = 0.0;
};

// Online trapezoid integration of p_trap along the reduced evolution; the
// horizon doubles until in-subspace survival is below kSurvivalCut or t_cap.
TrapIntegrals integrate_reduced(const Operator& reduced_trap, const Vector& coords0, double kappa,
                                double t_max, double dt, double t_cap) {
    if (t_max <= 0.0 || dt <= 0.0 || dt > t_max)
        throw InvalidParameter("transport: need 0 < dt <= t_max");

    StepEvolution evolution(reduced_trap, coords0, dt);
    TrapIntegrals out;
    double horizon = t_max;
    double prev_p = std::norm(evolution.state()(0));
    double prev_t = 0.0;
    while (true) {
        while (evolution.time() < horizon) {
            evolution.advance();
            const double t = evolution.time();
            const double p = std::norm(evolution.state()(0));
            out.absorbed += 0.5 * dt * (p + prev_p);
            out.absorbed_time += 0.5 * dt * (t * p + prev_t * prev_p);
            prev_p = p;
            prev_t = t;
        }
        out.t_final = evolution.time();
        const double survival = evolution.state().squaredNorm();
        if (survival <= kSurvivalCut) break;
        if (horizon >= t_cap) {
            out.converged = false;
            break;
        }
        horizon = std::min(2.0 * horizon, t_cap);
    }
    out.absorbed *= 2.0 * kappa;
    out.absorbed_time *= 2.0 * kappa;
    return out;
}

// (weight, reduced coordinates) pairs for the initial condition.
std::vector<std::pair<double, Vector>> reduced_components(const TransportProblem& p,
                                                          const KrylovBasis& basis) {
    std::vector<std::pair<double, Vector>> out;
    if (p.initial.is_pure()) {
        out.emplace_back(1.0, project(basis, p.initial.pure_state()).coords);
    } else {
        for (const auto& [weight, node] : p.initial.components()) {
            if (weight == 0.0) continue;
            out.emplace_back(weight, Vector(basis.vectors.row(node).adjoint()));
        }
    }
    return out;
}

} // namespace

InitialState InitialState::pure(Vector v) {
    InitialState s;
    s.pure_ = std::move(v);
    return s;
}

InitialState InitialState::node(int i) { return mixture({{1.0, i}}); }

InitialState InitialState::mixture(std::vector<std::pair<double, int>> weighted_nodes) {
    if (weighted_nodes.empty()) throw InvalidParameter("InitialState: empty mixture");
    double total = 0.0;
    for (const auto& [weight, node] : weighted_nodes) {
        if (weight < 0.0) throw InvalidParameter("InitialState: negative mixture weight");
        total += weight;
    }
    if (std::abs(total - 1.0) > tol::structure)
        throw InvalidParameter("InitialState: mixture weights must sum to 1");
    InitialState s;
    s.mixture_ = std::move(weighted_nodes);
    return s;
}

InitialState InitialState::all_sites(int n) {
    if (n < 1) throw InvalidParameter("InitialState: n must be >= 1");
    std::vector<std::pair<double, int>> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w.emplace_back(1.0 / n, i);
    return mixture(std::move(w));
}

InitialState InitialState::tree_leaves(int levels) {
    const auto [begin, end] = tree_column(levels, levels);
    std::vector<std::pair<double, int>> w;
    for (int i = begin; i < end; ++i) w.emplace_back(1.0 / (end - begin), i);
    return mixture(std::move(w));
}

TransportResult efficiency_subspace(const TransportProblem& problem) {
    check_problem(problem);
    const KrylovBasis basis = trap_basis(problem);

    TransportResult result;
    result.method = EfficiencyMethod::Subspace;
    result.decoupled = basis.m() == 1;
    if (problem.initial.is_pure()) {
        result.eta = (basis.vectors.adjoint() * problem.initial.pure_state()).squaredNorm();
    } else {
        double eta = 0.0;
        for (const auto& [weight, node] : problem.initial.components())
            eta += weight * basis.vectors.row(node).squaredNorm();
        result.eta = eta;
    }
    return result;
}

TransportResult efficiency_integrated(const TransportProblem& problem, double t_max, double dt,
                                      double t_cap) {
    check_problem(problem);
    const KrylovBasis basis = trap_basis(problem);
    const Operator h = reduced_with_trap(basis, problem.kappa);

    TransportResult result;
    result.method = EfficiencyMethod::Integrated;
    result.decoupled = basis.m() == 1;
    for (const auto& [weight, coords] : reduced_components(problem, basis)) {
        const auto integrals = integrate_reduced(h, coords, problem.kappa, t_max, dt, t_cap);
        result.eta += weight * integrals.absorbed;
        result.converged = result.converged && integrals.converged;
        result.t_final = std::max(result.t_final, integrals.t_final);
    }
    return result;
}

double trapping_time(const TransportProblem& problem, double t_max, double dt, double t_cap) {
    check_problem(problem);
    const KrylovBasis basis = trap_basis(problem);
    const Operator h = reduced_with_trap(basis, problem.kappa);

    double eta_bound = 0.0;
    for (const auto& [weight, coords] : reduced_components(problem, basis))
        eta_bound += weight * coords.squaredNorm();
    if (eta_bound < 0.01)
        throw NegligibleEfficiency("trapping_time: efficiency below 0.01");

    double absorbed = 0.0;
    double absorbed_time = 0.0;
    for (const auto& [weight, coords] : reduced_components(problem, basis)) {
        const auto integrals = integrate_reduced(h, coords, problem.kappa, t_max, dt, t_cap);
        absorbed += weight * integrals.absorbed;
        absorbed_time += weight * integrals.absorbed_time;
    }
    return absorbed_time / absorbed;
}

double trap_probability_closed_form(double kappa, double t) {
    if (kappa <= 0.0 || kappa >= 2.0)
        throw OutOfModelRange("trap_probability_closed_form: requires 0 < kappa < 2");
    const double omega = 0.5 * std::sqrt(4.0 - kappa * kappa);
    const double s = std::sin(omega * t);
    return std::exp(-kappa * t) * s * s / (omega * omega);
}

double broken_link_efficiency(int n, BrokenLinkKind which) {
    if (n < 4) throw InvalidParameter("broken_link_efficiency: n must be >= 4");
    const int trap = 0;
    const int initial = 1;
    const Edge removed = which == BrokenLinkKind::ToTrap ? Edge{0, 1} : Edge{1, 2};
    TransportProblem p{remove_links(complete(n), std::span(&removed, 1)), trap, 1.0,
                       InitialState::node(initial)};
    return efficiency_subspace(p).eta;
}

ApplyFn complete_minus_apply(int n, std::vector<Edge> removed) {
    return [n, removed = std::move(removed)](const Vector& v) {
        const Complex total = v.sum();
        Vector out = Vector::Constant(n, total) - v;
        for (const auto& [a, b] : removed) {
            out(a) -= v(b);
            out(b) -= v(a);
        }
        return out;
    };
}

BrokenLinkModel broken_link_model(int n, double kappa) {
    if (n < 4) throw InvalidParameter("broken_link_model: n must be >= 4");
    const ApplyFn apply = complete_minus_apply(n, {{0, 1}});
    Vector seed = Vector::Zero(n);
    seed(0) = 1.0;
    BrokenLinkModel model{lanczos_apply(apply, n, seed, kLanczosTol, static_cast<double>(n - 1)),
                          Operator::hermitian(Matrix::Identity(1, 1)), Vector()};
    model.reduced_trap = reduced_with_trap(model.basis, kappa);
    Vector initial = Vector::Zero(n);
    initial(1) = 1.0;
    model.initial_coords = project(model.basis, initial).coords;
    return model;
}

EvolutionTrace trap_probability_trace(const Operator& reduced_trap, const Vector& coords0,
                                      double t_max, double dt) {
    if (t_max <= 0.0 || dt <= 0.0) throw InvalidParameter("trap_probability_trace: bad grid");
    const auto n_steps = static_cast<std::size_t>(std::floor(t_max / dt)) + 1;
    EvolutionTrace trace;
    trace.times.reserve(n_steps);
    trace.values.reserve(n_steps);
    StepEvolution evolution(reduced_trap, coords0, dt);
    for (std::size_t k = 0; k < n_steps; ++k) {
        trace.times.push_back(evolution.time());
        trace.values.push_back(std::norm(evolution.state()(0)));
        evolution.advance();
    }
    return trace;
}

std::vector<SweepRow> sweep_broken_links(const FamilySpec& spec, int trap,
                                         const InitialState& initial,
                                         std::span<const int> r_values, int samples,
                                         std::uint64_t seed, int jobs) {
    if (samples < 1) throw InvalidParameter("sweep_broken_links: samples must be >= 1");
    if (jobs < 1) jobs = 1;
    const Graph base = build_graph(spec);

    auto one_sample = [&](int r, int sample_index) {
        const std::uint64_t salt =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(r)) << 32) |
            static_cast<std::uint32_t>(sample_index);
        const auto broken =
            sample_broken(base, r, BreakConstraint::none(), SplitMix64::derive(seed, salt));
        TransportProblem p{remove_links(base, broken), trap, 1.0, initial};
        return efficiency_subspace(p).eta;
    };

    std::vector<SweepRow> rows;
    rows.reserve(r_values.size());
    for (const int r : r_values) {
        if (r < 0 || static_cast<std::size_t>(r) > base.edges.size())
            throw InvalidParameter("sweep_broken_links: r exceeds edge count");
        std::vector<double> etas(static_cast<std::size_t>(samples));
        if (jobs == 1) {
            for (int s = 0; s < samples; ++s) etas[static_cast<std::size_t>(s)] = one_sample(r, s);
        } else {
            std::vector<std::future<void>> futures;
            const int block = (samples + jobs - 1) / jobs;
            for (int j = 0; j < jobs; ++j) {
                const int begin = j * block;
                const int end = std::min(samples, begin + block);
                if (begin >= end) break;
                futures.push_back(std::async(std::launch::async, [&, begin, end]() {
                    for (int s = begin; s < end; ++s)
                        etas[static_cast<std::size_t>(s)] = one_sample(r, s);
                }));
            }
            for (auto& f : futures) f.get();
        }
        const double mean = std::accumulate(etas.begin(), etas.end(), 0.0) / samples;
        double var = 0.0;
        for (const double e : etas) var += (e - mean) * (e - mean);
        var /= samples;
        rows.push_back({r, mean, std::sqrt(var / samples), samples});
    }
    return rows;
}

} // namespace ctqw
