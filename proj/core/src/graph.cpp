#include "ctqw/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ctqw/rng.hpp"

namespace ctqw {

namespace {

Edge normalized(int i, int j) { return i < j ? Edge{i, j} : Edge{j, i}; }

void finalize(Graph& g) {
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

} // namespace

bool Graph::has_edge(int i, int j) const {
    return std::binary_search(edges.begin(), edges.end(), normalized(i, j));
}

int Graph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges)
        if (a == v || b == v) ++d;
    return d;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    for (const auto& [a, b] : edges) {
        ++d[static_cast<std::size_t>(a)];
        ++d[static_cast<std::size_t>(b)];
    }
    return d;
}

int FamilySpec::node_count() const {
    switch (family) {
    case Family::Complete:
    case Family::Star:
    case Family::Path: return n;
    case Family::CompleteBipartite: return m1 + m2;
    case Family::BinaryTree: return (1 << levels) - 1;
    case Family::Hypercube: return 1 << dim;
    case Family::Custom: return n;
    }
    return 0;
}

FamilySpec FamilySpec::complete(int n) { return {Family::Complete, n}; }
FamilySpec FamilySpec::complete_bipartite(int m1, int m2) {
    FamilySpec s;
    s.family = Family::CompleteBipartite;
    s.m1 = m1;
    s.m2 = m2;
    return s;
}
FamilySpec FamilySpec::star(int n) {
    FamilySpec s;
    s.family = Family::Star;
    s.n = n;
    return s;
}
FamilySpec FamilySpec::binary_tree(int levels) {
    FamilySpec s;
    s.family = Family::BinaryTree;
    s.levels = levels;
    return s;
}
FamilySpec FamilySpec::hypercube(int dim) {
    FamilySpec s;
    s.family = Family::Hypercube;
    s.dim = dim;
    return s;
}
FamilySpec FamilySpec::path(int n) {
    FamilySpec s;
    s.family = Family::Path;
    s.n = n;
    return s;
}

Graph complete(int n) {
    if (n < 1) throw InvalidParameter("complete: n must be >= 1");
    Graph g;
    g.n = n;
    g.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    return g;
}

Graph complete_bipartite(int m1, int m2) {
    if (m1 < 1 || m2 < 1)
        throw InvalidParameter("complete_bipartite: both partitions must be non-empty");
    Graph g;
    g.n = m1 + m2;
    g.edges.reserve(static_cast<std::size_t>(m1) * m2);
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j) g.edges.emplace_back(i, m1 + j);
    return g;
}

Graph star(int n) {
    if (n < 2) throw InvalidParameter("star: n must be >= 2");
    return complete_bipartite(n - 1, 1); // center lands on node n-1
}

int star_center(int n) { return n - 1; }

Graph binary_tree(int levels) {
    if (levels < 1) throw InvalidParameter("binary_tree: levels must be >= 1");
    const int n = (1 << levels) - 1;
    Graph g;
    g.n = n;
    for (int v = 1; 2 * v <= n; ++v) { // 1-indexed parent/child arithmetic
        g.edges.emplace_back(v - 1, 2 * v - 1);
        if (2 * v + 1 <= n) g.edges.emplace_back(v - 1, 2 * v);
    }
    finalize(g);
    return g;
}

std::pair<int, int> tree_column(int levels, int column) {
    if (column < 1 || column > levels)
        throw InvalidParameter("tree_column: column out of range");
    return {(1 << (column - 1)) - 1, (1 << column) - 1};
}

Graph hypercube(int dim) {
    if (dim < 1) throw InvalidParameter("hypercube: dimension must be >= 1");
    const int n = 1 << dim;
    Graph g;
    g.n = n;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < dim; ++b) {
            const int u = v ^ (1 << b);
            if (v < u) g.edges.emplace_back(v, u);
        }
    finalize(g);
    return g;
}

Graph path(int n) {
    if (n < 1) throw InvalidParameter("path: n must be >= 1");
    Graph g;
    g.n = n;
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    return g;
}

Graph build_graph(const FamilySpec& spec) {
    switch (spec.family) {
    case Family::Complete: return complete(spec.n);
    case Family::CompleteBipartite: return complete_bipartite(spec.m1, spec.m2);
    case Family::Star: return star(spec.n);
    case Family::BinaryTree: return binary_tree(spec.levels);
    case Family::Hypercube: return hypercube(spec.dim);
    case Family::Path: return path(spec.n);
    case Family::Custom:
        throw InvalidParameter("build_graph: custom graphs come from read_edge_list");
    }
    throw InvalidParameter("build_graph: unknown family");
}

Graph remove_links(const Graph& g, std::span<const Edge> broken) {
    Graph out = g;
    for (const auto& [i, j] : broken) {
        const Edge e = normalized(i, j);
        auto it = std::lower_bound(out.edges.begin(), out.edges.end(), e);
        if (it == out.edges.end() || *it != e) {
            std::ostringstream msg;
            msg << "remove_links: edge (" << i << ", " << j << ") not present";
            throw EdgeNotPresent(msg.str());
        }
        out.edges.erase(it);
    }
    return out;
}

namespace {

bool touches_avoided(const Edge& e, const std::vector<int>& avoid) {
    for (int v : avoid)
        if (e.first == v || e.second == v) return true;
    return false;
}

} // namespace

std::vector<Edge> sample_broken(const Graph& g, int r, const BreakConstraint& constraint,
                                std::uint64_t seed) {
    if (r < 0) throw InvalidParameter("sample_broken: r must be >= 0");
    if (r == 0) return {};

    std::vector<Edge> pool;
    pool.reserve(g.edges.size());
    for (const Edge& e : g.edges)
        if (!touches_avoided(e, constraint.avoid)) pool.push_back(e);

    if (static_cast<std::size_t>(r) > pool.size())
        throw ConstraintUnsatisfiable("sample_broken: fewer admissible edges than requested");

    SplitMix64 rng(seed);

    auto draw_subset = [&]() {
        // partial Fisher-Yates: first r slots are a uniform r-subset
        std::vector<std::size_t> idx(pool.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (int k = 0; k < r; ++k) {
            const std::size_t j =
                static_cast<std::size_t>(k) + rng.next_below(idx.size() - static_cast<std::size_t>(k));
            std::swap(idx[static_cast<std::size_t>(k)], idx[j]);
        }
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(r));
        for (int k = 0; k < r; ++k) out.push_back(pool[idx[static_cast<std::size_t>(k)]]);
        std::sort(out.begin(), out.end());
        return out;
    };

    if (!constraint.at_most_one_per_node) return draw_subset();

    // Matching constraint. Two exactly-uniform rejection samplers: subset
    // rejection works when matchings are not rare among r-subsets; the
    // permutation-pairing sampler covers dense graphs (it accepts immediately
    // on complete graphs, including perfect matchings).
    auto subset_is_matching = [](const std::vector<Edge>& es) {
        std::vector<int> seen;
        seen.reserve(es.size() * 2);
        for (const auto& [a, b] : es) {
            seen.push_back(a);
            seen.push_back(b);
        }
        std::sort(seen.begin(), seen.end());
        return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    };

    for (int attempt = 0; attempt < 2000; ++attempt) {
        auto candidate = draw_subset();
        if (subset_is_matching(candidate)) return candidate;
    }

    std::vector<int> nodes;
    nodes.reserve(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v)
        if (std::find(constraint.avoid.begin(), constraint.avoid.end(), v) ==
            constraint.avoid.end())
            nodes.push_back(v);
    if (static_cast<std::size_t>(2 * r) > nodes.size())
        throw ConstraintUnsatisfiable("sample_broken: matching larger than the admissible node set");

    for (int attempt = 0; attempt < 200000; ++attempt) {
        std::vector<int> perm = nodes;
        for (std::size_t k = 0; k + 1 < perm.size(); ++k) {
            const std::size_t j = k + rng.next_below(perm.size() - k);
            std::swap(perm[k], perm[j]);
        }
        std::vector<Edge> candidate;
        candidate.reserve(static_cast<std::size_t>(r));
        bool ok = true;
        for (int k = 0; k < r; ++k) {
            const int a = perm[static_cast<std::size_t>(2 * k)];
            const int b = perm[static_cast<std::size_t>(2 * k + 1)];
            if (!g.has_edge(a, b)) {
                ok = false;
                break;
            }
            candidate.push_back(normalized(a, b));
        }
        if (ok) {
            std::sort(candidate.begin(), candidate.end());
            return candidate;
        }
    }
    throw ConstraintUnsatisfiable(
        "sample_broken: no admissible matching found (constraint likely unsatisfiable)");
}

Operator adjacency(const Graph& g) {
    if (g.n < 1) throw InvalidParameter("adjacency: empty graph");
    Matrix a = Matrix::Zero(g.n, g.n);
    for (const auto& [i, j] : g.edges) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return Operator::hermitian(std::move(a));
}

Graph read_edge_list(std::istream& in) {
    Graph g;
    std::string line;
    bool have_n = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        if (!have_n) {
            if (row >> g.n) {
                if (g.n < 1) throw InvalidParameter("read_edge_list: n must be >= 1");
                have_n = true;
            }
            continue;
        }
        int i, j;
        if (!(row >> i)) continue; // blank or comment-only line
        if (!(row >> j)) {
            std::ostringstream msg;
            msg << "read_edge_list: malformed edge on line " << line_no;
            throw InvalidParameter(msg.str());
        }
        if (i == j || i < 0 || j < 0 || i >= g.n || j >= g.n) {
            std::ostringstream msg;
            msg << "read_edge_list: invalid edge (" << i << ", " << j << ") on line " << line_no;
            throw InvalidParameter(msg.str());
        }
        g.edges.push_back(normalized(i, j));
    }
    if (!have_n) throw InvalidParameter("read_edge_list: missing node count");
    finalize(g);
    return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n << "\n";
    for (const auto& [i, j] : g.edges) out << i << " " << j << "\n";
}

} // namespace ctqw
