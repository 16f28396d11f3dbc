// transfer.hpp — XY spin networks in the single-excitation sector, the
// sqrt(efficiency) upper bound on transfer fidelity, and W-state preparation
// on binary trees.

#pragma once

#include "ctqw/graph.hpp"
#include "ctqw/krylov.hpp"

namespace ctqw {

struct TransferProblem {
    Graph graph;
    int source = 0;
    int target = 0;
    double t_window = 0.0; // <= 0 selects the default 20*sqrt(n)
    double dt = 0.0;       // <= 0 selects t_window / 1e4
};

struct TransferBoundReport {
    double bound = 0.0;         // ||P|source>|| = sqrt(eta) of the matching transport problem
    double f_max = 0.0;         // grid maximum of |<target|U(t)|source>|
    double t_at_max = 0.0;
    bool tight = false;         // |bound - f_max| <= epsilon
    double epsilon = 0.02;      // empirical tightness margin
    double t_window = 0.0;
    double dt = 0.0;
};

// Single-excitation XY Hamiltonian at unit coupling; entrywise equal to the
// adjacency matrix.
Operator xy_single_excitation(const Graph& g);

// sqrt(eta): norm of the source state projected onto the invariant subspace of
// the target node.
double fidelity_bound(const Graph& g, int source, int target);

// Scans |<target|U(t)|source>| on the grid, evolving in the target's reduced
// subspace (amplitude outside it can never reach the target).
TransferBoundReport max_fidelity_scan(const TransferProblem& problem);

// Root-to-leaf-column overlap on a binary tree with `levels` levels: evolves
// |col 1> on the reduced weighted line and returns (max |<col l|psi(t)>|^2,
// time of max). A maximum near 1 means the walk prepares the W state of the
// last column.
std::pair<double, double> w_state_preparation(int levels, double t_window, double dt);

} // namespace ctqw
