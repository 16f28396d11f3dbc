// graph.hpp — graph families, link removal, seeded samplers, adjacency matrices.
//
// Node labeling conventions (fixed so special nodes are addressable by index):
//   complete(n), path(n)        0..n-1; path edges (i, i+1)
//   complete_bipartite(m1, m2)  partition 1 = [0, m1), partition 2 = [m1, m1+m2)
//   star(n)                     leaves 0..n-2, center n-1
//                               (star(n) == complete_bipartite(n-1, 1))
//   binary_tree(l)              level order, root 0; node v has children 2v+1, 2v+2;
//                               column j (1-based) = [2^{j-1}-1, 2^j-1)
//   hypercube(d)                node index = integer value of the d-bit string;
//                               edges connect Hamming-distance-1 pairs

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctqw/linalg.hpp"

namespace ctqw {

using Edge = std::pair<int, int>; // stored normalized: first < second

struct Graph {
    int n = 0;
    std::vector<Edge> edges; // sorted, unique, endpoints in [0, n)

    bool has_edge(int i, int j) const;
    int degree(int v) const;
    std::vector<int> degrees() const;
};

enum class Family {
    Complete,
    CompleteBipartite,
    Star,
    BinaryTree,
    Hypercube,
    Path,
    Custom,
};

struct FamilySpec {
    Family family = Family::Complete;
    int n = 0;      // complete, star, path
    int m1 = 0;     // complete_bipartite
    int m2 = 0;
    int levels = 0; // binary_tree
    int dim = 0;    // hypercube
    std::string file; // custom (edge-list path, resolved by the caller)

    int node_count() const;

    static FamilySpec complete(int n);
    static FamilySpec complete_bipartite(int m1, int m2);
    static FamilySpec star(int n);
    static FamilySpec binary_tree(int levels);
    static FamilySpec hypercube(int dim);
    static FamilySpec path(int n);
};

Graph build_graph(const FamilySpec& spec);

Graph complete(int n);
Graph complete_bipartite(int m1, int m2);
Graph star(int n);
Graph binary_tree(int levels);
Graph hypercube(int dim);
Graph path(int n);

int star_center(int n);                                    // n - 1
std::pair<int, int> tree_column(int levels, int column);   // [begin, end), column 1-based

// Edge set minus `broken`; n unchanged, isolated nodes permitted.
Graph remove_links(const Graph& g, std::span<const Edge> broken);

// Admissible-set constraint for sample_broken. `at_most_one_per_node` restricts
// to matchings; `avoid` excludes edges incident to the listed nodes.
struct BreakConstraint {
    bool at_most_one_per_node = false;
    std::vector<int> avoid;

    static BreakConstraint none() { return {}; }
    static BreakConstraint matching() { return {true, {}}; }
    static BreakConstraint avoid_node(int w) { return {false, {w}}; }
    static BreakConstraint matching_avoiding(int w) { return {true, {w}}; }
};

// Uniform sample over admissible r-subsets of g.edges, deterministic per seed.
std::vector<Edge> sample_broken(const Graph& g, int r, const BreakConstraint& constraint,
                                std::uint64_t seed);

Operator adjacency(const Graph& g);

// Edge-list text format: first line `n`, then `i j` per line, 0-indexed;
// `#` starts a comment.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace ctqw
