// Shared helpers for the unit and acceptance suites: seeded random inputs and
// full-space reference evolutions that bypass the Krylov reduction entirely.

#pragma once

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "ctqw/graph.hpp"
#include "ctqw/krylov.hpp"
#include "ctqw/rng.hpp"

namespace ctqw::testing {

inline Vector basis_vector(Index n, Index i) {
    Vector v = Vector::Zero(n);
    v(i) = 1.0;
    return v;
}

inline Vector uniform_superposition(Index n) {
    return Vector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

inline Vector random_state(Index n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vector v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    return v / v.norm();
}

inline Matrix random_hermitian(Index n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            m(i, j) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    return Matrix(0.5 * (m + m.adjoint()));
}

inline bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
    for (const auto& [a, b] : g.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<bool> seen(static_cast<std::size_t>(g.n), false);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = true;
    int count = 1;
    while (!todo.empty()) {
        const int v = todo.front();
        todo.pop();
        for (const int u : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++count;
                todo.push(u);
            }
    }
    return count == g.n;
}

inline Graph random_graph(int n, double p, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Graph g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < p) g.edges.emplace_back(i, j);
    return g;
}

inline Graph random_connected_graph(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Graph g = random_graph(n, 0.5, SplitMix64::derive(seed, attempt));
        if (is_connected(g)) return g;
    }
}

// Full-space amplitude <target| e^{-iHt} |psi0> on a uniform grid, via the
// eigendecomposition. Independent of the Lanczos reduction path.
inline std::vector<double> full_probability_trace(const Operator& h, const Vector& psi0,
                                                  int target, std::size_t n_steps, double dt) {
    const Spectrum s = hermitian_eig(h);
    const Vector coeffs = s.eigenvectors.adjoint() * psi0;
    std::vector<double> out;
    out.reserve(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        Complex amp = 0.0;
        for (Index j = 0; j < coeffs.size(); ++j)
            amp += s.eigenvectors(target, j) * std::exp(Complex(0.0, -s.eigenvalues(j) * t)) *
                   coeffs(j);
        out.push_back(std::norm(amp));
    }
    return out;
}

// Full-space trap-node probability under H = A - i*kappa|trap><trap|, stepped
// with the dense Padé propagator (no reduction).
inline std::vector<double> full_trap_trace(const Graph& g, int trap, double kappa,
                                           const Vector& psi0, std::size_t n_steps, double dt) {
    const Operator h = Operator::hermitian_plus_trap(adjacency(g).mat, kappa, trap);
    StepEvolution evolution(h, psi0, dt);
    std::vector<double> out;
    out.reserve(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
        out.push_back(std::norm(evolution.state()(trap)));
        evolution.advance();
    }
    return out;
}

} // namespace ctqw::testing
