// transport.hpp — trapped exciton transport: efficiency by subspace overlap and
// by time integration, trapping time, the large-N broken-link model, and
// seeded broken-link sweeps.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ctqw/graph.hpp"
#include "ctqw/krylov.hpp"
#include "ctqw/search.hpp" // EvolutionTrace

namespace ctqw {

// Pure state or a statistical mixture of node-localized states.
class InitialState {
public:
    static InitialState pure(Vector v);
    static InitialState node(int i);
    static InitialState mixture(std::vector<std::pair<double, int>> weighted_nodes);
    static InitialState all_sites(int n);
    static InitialState tree_leaves(int levels);

    bool is_pure() const { return pure_.has_value(); }
    const Vector& pure_state() const { return *pure_; }
    const std::vector<std::pair<double, int>>& components() const { return mixture_; }

private:
    InitialState() = default;
    std::optional<Vector> pure_;
    std::vector<std::pair<double, int>> mixture_; // (weight, node)
};

struct TransportProblem {
    Graph graph;
    int trap = 0;
    double kappa = 1.0; // trapping rate, units of the hopping V = 1
    InitialState initial = InitialState::node(0);
};

enum class EfficiencyMethod { Subspace, Integrated };

struct TransportResult {
    double eta = 0.0;
    std::optional<double> tau;
    EfficiencyMethod method = EfficiencyMethod::Subspace;
    std::optional<EvolutionTrace> trace;
    bool decoupled = false; // trap's invariant subspace is just the trap itself
    bool converged = true;  // false when the integration cap was reached
    double t_final = 0.0;   // integration horizon actually used
};

// eta = sum_k w_k ||P |i_k>||^2 with P the projector onto the invariant
// subspace of the adjacency seeded at the trap. Independent of kappa.
TransportResult efficiency_subspace(const TransportProblem& problem);

// eta = 2*kappa * integral of p_trap(t), evolved in reduced coordinates with
// the trap term -i*kappa|e1><e1|. The horizon doubles from t_max until the
// in-subspace survival drops below 1e-6, up to t_cap (then converged=false).
TransportResult efficiency_integrated(const TransportProblem& problem, double t_max, double dt,
                                      double t_cap = 1e5);

// Absorption-weighted mean absorption time (2k/eta) * integral of t*p_trap(t).
// Throws NegligibleEfficiency when eta < 0.01.
double trapping_time(const TransportProblem& problem, double t_max, double dt,
                     double t_cap = 1e5);

// Two-level closed form for the complete graph with the initial-trap link
// removed, valid for 0 < kappa < 2: e^{-kappa t} sin^2(Omega t) / Omega^2 with
// Omega = sqrt(4 - kappa^2)/2.
double trap_probability_closed_form(double kappa, double t);

enum class BrokenLinkKind { ToTrap, ToOther };

// Efficiency on complete(n) with one link removed from the initial node:
// 1 when the removed link reached the trap, 1/2 otherwise, independent of n.
double broken_link_efficiency(int n, BrokenLinkKind which);

// Matrix-free adjacency of K_n minus a few edges (used for large n).
ApplyFn complete_minus_apply(int n, std::vector<Edge> removed);

// Reduced three-site dynamics of K_n with the (initial, trap) link removed,
// seeded at the trap; trap node 0, initial node 1. Built by matrix-free
// Lanczos so n = 10^4 costs nothing.
struct BrokenLinkModel {
    KrylovBasis basis;
    Operator reduced_trap; // tridiagonal minus i*kappa |e1><e1|
    Vector initial_coords; // the initial node in reduced coordinates
};
BrokenLinkModel broken_link_model(int n, double kappa);

// p_trap(t) on a uniform grid for a reduced trap Hamiltonian.
EvolutionTrace trap_probability_trace(const Operator& reduced_trap, const Vector& coords0,
                                      double t_max, double dt);

struct SweepRow {
    int r = 0;
    double mean_eta = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

// Average subspace efficiency over `samples` uniform r-link removals
// (constraint none; decoupled configurations are averaged in). Each (r, sample)
// pair draws its own RNG stream from the seed, so results are independent of
// `jobs` and of execution order.
std::vector<SweepRow> sweep_broken_links(const FamilySpec& spec, int trap,
                                         const InitialState& initial, std::span<const int> r_values,
                                         int samples, std::uint64_t seed, int jobs = 1);

} // namespace ctqw
