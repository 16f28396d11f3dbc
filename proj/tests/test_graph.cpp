#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "ctqw/graph.hpp"
#include "ctqw/rng.hpp"
#include "test_support.hpp"

using namespace ctqw;

TEST_SUITE("graph") {

TEST_CASE("complete(4): 6 edges, every degree 3") {
    const Graph g = complete(4);
    CHECK(g.edges.size() == 6);
    for (int d : g.degrees()) CHECK(d == 3);
}

TEST_CASE("binary_tree(3): 7 nodes, 6 edges, level-order children") {
    const Graph g = binary_tree(3);
    CHECK(g.n == 7);
    CHECK(g.edges.size() == 6);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(1, 3));
    CHECK(g.has_edge(2, 6));
    const auto [begin, end] = tree_column(3, 3);
    CHECK(begin == 3);
    CHECK(end == 7);
}

TEST_CASE("complete_bipartite(4,3): 12 edges, degree multiset {3,3,3,3,4,4,4}") {
    const Graph g = complete_bipartite(4, 3);
    CHECK(g.edges.size() == 12);
    auto d = g.degrees();
    std::sort(d.begin(), d.end());
    CHECK(d == std::vector<int>{3, 3, 3, 3, 4, 4, 4});
}

TEST_CASE("star convention: center is node n-1") {
    const Graph g = star(5);
    CHECK(star_center(5) == 4);
    CHECK(g.degree(4) == 4);
    for (int leaf = 0; leaf < 4; ++leaf) CHECK(g.degree(leaf) == 1);
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(binary_tree(0), InvalidParameter);
    CHECK_THROWS_AS(hypercube(0), InvalidParameter);
    CHECK_THROWS_AS(complete_bipartite(0, 3), InvalidParameter);
}

TEST_CASE("adjacency: path(2), complete(3), hypercube(2)") {
    CHECK(adjacency(path(2)).mat(0, 1) == Complex(1.0));
    CHECK(adjacency(path(2)).mat(0, 0) == Complex(0.0));

    const Matrix k3 = adjacency(complete(3)).mat;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(k3(i, j) == Complex(i == j ? 0.0 : 1.0));

    // hypercube(2) is the 4-cycle 0-1-3-2-0
    const Graph c4 = hypercube(2);
    CHECK(c4.edges.size() == 4);
    for (int d : c4.degrees()) CHECK(d == 2);
    CHECK(c4.has_edge(0, 1));
    CHECK(c4.has_edge(0, 2));
    CHECK(c4.has_edge(1, 3));
    CHECK(c4.has_edge(2, 3));
    CHECK(!c4.has_edge(0, 3));
}

TEST_CASE("row sums of the adjacency equal node degrees") {
    for (const Graph& g : {complete(6), hypercube(3), binary_tree(4), star(9)}) {
        const Matrix a = adjacency(g).mat;
        const auto degrees = g.degrees();
        for (int v = 0; v < g.n; ++v)
            CHECK(a.row(v).sum().real() == doctest::Approx(degrees[static_cast<std::size_t>(v)]));
    }
}

TEST_CASE("remove_links: complete(7) minus a 3-matching has 18 edges") {
    const std::vector<Edge> broken = {{0, 1}, {2, 3}, {4, 5}};
    const Graph g = remove_links(complete(7), broken);
    CHECK(g.edges.size() == 18);
    for (const Edge& e : broken) CHECK(!g.has_edge(e.first, e.second));
}

TEST_CASE("remove_links: leaf isolation and the empty graph") {
    const std::vector<Edge> leaf_link = {{0, star_center(6)}};
    const Graph g = remove_links(star(6), leaf_link);
    CHECK(g.degree(0) == 0);
    CHECK(g.n == 6);

    const Graph k3 = complete(3);
    const Graph empty = remove_links(k3, k3.edges);
    CHECK(empty.edges.empty());
    CHECK(empty.n == 3);

    const std::vector<Edge> missing = {{0, 1}};
    CHECK_THROWS_AS(remove_links(empty, missing), EdgeNotPresent);
}

TEST_CASE("sample_broken: r=0 and determinism") {
    const Graph g = complete(8);
    CHECK(sample_broken(g, 0, BreakConstraint::none(), 5).empty());
    const auto a = sample_broken(g, 5, BreakConstraint::none(), 123);
    const auto b = sample_broken(g, 5, BreakConstraint::none(), 123);
    CHECK(a == b);
    const auto c = sample_broken(g, 5, BreakConstraint::none(), 124);
    CHECK(a != c); // overwhelmingly likely for distinct seeds
}

TEST_CASE("sample_broken: matching constraint yields disjoint endpoints") {
    const Graph g = complete(8);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto edges = sample_broken(g, 4, BreakConstraint::matching(), seed);
        CHECK(edges.size() == 4);
        std::vector<int> endpoints;
        for (const auto& [a, b] : edges) {
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
        std::sort(endpoints.begin(), endpoints.end());
        CHECK(std::adjacent_find(endpoints.begin(), endpoints.end()) == endpoints.end());
    }
}

TEST_CASE("sample_broken: avoid_node keeps the protected node untouched") {
    const Graph g = star(10);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto edges = sample_broken(g, 2, BreakConstraint::avoid_node(3), seed);
        CHECK(edges.size() == 2);
        for (const auto& [a, b] : edges) {
            CHECK(a != 3);
            CHECK(b != 3);
        }
    }
}

TEST_CASE("sample_broken: unsatisfiable constraints throw") {
    CHECK_THROWS_AS(sample_broken(complete(4), 3, BreakConstraint::matching(), 0),
                    ConstraintUnsatisfiable);
    CHECK_THROWS_AS(sample_broken(star(4), 4, BreakConstraint::none(), 0),
                    ConstraintUnsatisfiable);
    // perfect matching avoiding a node is impossible on an even clique
    CHECK_THROWS_AS(sample_broken(complete(8), 4, BreakConstraint::matching_avoiding(0), 0),
                    ConstraintUnsatisfiable);
}

TEST_CASE("sample_broken: matching samples are close to uniform") {
    // K5 has 15 matchings of size 2; chi-square-style sanity with wide bounds.
    const Graph g = complete(5);
    std::map<std::vector<Edge>, int> counts;
    const int draws = 3000;
    for (int k = 0; k < draws; ++k)
        counts[sample_broken(g, 2, BreakConstraint::matching(), 10000 + static_cast<std::uint64_t>(k))]++;
    CHECK(counts.size() == 15);
    for (const auto& [edges, count] : counts) {
        CHECK(count > 120); // expectation 200, six sigma ~ 82
        CHECK(count < 280);
    }
}

TEST_CASE("permutation equivariance of the adjacency") {
    const Graph g = testing::random_connected_graph(7, 99);
    // relabel v -> (v + 3) mod 7
    Graph h;
    h.n = g.n;
    for (const auto& [a, b] : g.edges) {
        const int pa = (a + 3) % 7;
        const int pb = (b + 3) % 7;
        h.edges.emplace_back(std::min(pa, pb), std::max(pa, pb));
    }
    std::sort(h.edges.begin(), h.edges.end());
    const Matrix ag = adjacency(g).mat;
    const Matrix ah = adjacency(h).mat;
    Matrix perm = Matrix::Zero(7, 7);
    for (int v = 0; v < 7; ++v) perm((v + 3) % 7, v) = 1.0;
    CHECK((perm * ag * perm.transpose() - ah).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("edge-list round trip with comments") {
    const Graph g = complete_bipartite(3, 2);
    std::stringstream buffer;
    buffer << "# bipartite test fixture\n";
    write_edge_list(buffer, g);
    buffer << "# trailing comment\n";
    const Graph back = read_edge_list(buffer);
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);

    std::stringstream bad("5\n1 9\n");
    CHECK_THROWS_AS(read_edge_list(bad), InvalidParameter);
}

} // TEST_SUITE
