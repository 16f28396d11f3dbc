// search.hpp — spatial search: H = -gamma*A - |w><w|, reduced-space evolution,
// peak detection, and the closed-form predictions for each graph family.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "ctqw/graph.hpp"
#include "ctqw/krylov.hpp"

namespace ctqw {

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> values; // probabilities at the target node
};

struct SearchProblem {
    Graph graph;
    int solution = 0;
    double gamma = 0.0;
    std::optional<Vector> initial; // default: uniform superposition |s>
};

struct SearchPrediction {
    double time = 0.0;
    double success_probability = 0.0;
};

struct SearchResult {
    double t_peak = 0.0;
    double p_peak = 0.0;
    double gamma_used = 0.0;
    EvolutionTrace trace;
    std::optional<SearchPrediction> predicted;
    double initial_residual = 0.0; // norm of the initial state outside the subspace
    bool reduced = false;          // evolution ran in the Krylov subspace
    Index subspace_dim = 0;
};

enum class SolutionLocation {
    Default,    // complete / path: any node
    Partition1, // complete_bipartite: w in partition 1 (size m1)
    Partition2,
    Leaf, // star
    Center,
};

Operator search_hamiltonian(const Graph& g, int w, double gamma);

// The paper's optimal hopping rate per family: complete 1/N; complete
// bipartite 1/sqrt(m1*m2) (= (N sqrt(alpha(1-alpha)))^-1); star leaf 1/sqrt(N),
// star center 1/sqrt(N-1). Throws UnsupportedFamily otherwise.
double optimal_gamma(const FamilySpec& spec, SolutionLocation location = SolutionLocation::Default);

// Large-N closed forms for (running time, success probability).
SearchPrediction search_prediction(const FamilySpec& spec,
                                   SolutionLocation location = SolutionLocation::Default);

// Upper bound on the expected runtime of the alternating two-time measurement
// strategy on a complete bipartite graph: pi*sqrt(N)*(1+2*sqrt(a(1-a)))^{1/2}.
double two_phase_expected_runtime(const FamilySpec& spec);

// Evolve on a uniform grid, in the Krylov subspace of the solution node when it
// is smaller than the full space. T_peak is the earliest local maximum whose
// value is within a fixed 1e-3 relative slack of the grid maximum (plain
// "first local max" latches onto sub-percent interference ripples on families
// with a third, detuned basis state; see the tests).
SearchResult run_search(const SearchProblem& problem, double t_max, double dt);

// Returns (gamma*, result at gamma*) maximizing p_peak; ties break toward
// smaller gamma.
std::pair<double, SearchResult> gamma_scan(const SearchProblem& base,
                                           std::span<const double> gammas, double t_max,
                                           double dt);

// Exact reduced search Hamiltonian of a complete graph with k broken links
// (at most one per node), built by Lanczos on a concretely sampled graph.
// Dimension is checked: 2 for k=0; 3 when no broken link touches the solution;
// 3 for k=1 through the solution; 4 for k>=2 with one link at the solution.
Operator broken_link_reduced_search(int n, int k, bool link_at_solution, double gamma,
                                    std::uint64_t seed = 0);

} // namespace ctqw
