#include <doctest.h>

#include <random>

#include "toughham/graph.hpp"
#include "toughham/oracles.hpp"

using namespace toughham;

TEST_CASE("components of small graphs") {
    Graph p3 = path_graph(3);
    auto comps = components(p3, VertexSet::of(3, {1}));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == VertexSet::of(3, {0}));
    CHECK(comps[1] == VertexSet::of(3, {2}));

    Graph k4 = complete_graph(4);
    CHECK(components(k4).size() == 1);

    // K4 minus one edge, the two surviving universal vertices removed
    Graph k4e = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto split = components(k4e, VertexSet::of(4, {2, 3}));
    REQUIRE(split.size() == 2);
    CHECK(split[0] == VertexSet::of(4, {0}));
    CHECK(split[1] == VertexSet::of(4, {1}));
}

TEST_CASE("components partition the vertex set") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + int(rng() % 12);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 3 == 0) edges.emplace_back(u, v);
        Graph g = Graph::from_edges(n, edges);
        auto comps = components(g);
        VertexSet all(n);
        int total = 0;
        for (const auto& c : comps) {
            CHECK(!all.intersects(c));
            all |= c;
            total += c.count();
        }
        CHECK(total == n);
        CHECK(all == VertexSet::full(n));
    }
}

TEST_CASE("induced subgraphs") {
    Graph k4 = complete_graph(4);
    auto sub = induced(k4, VertexSet::of(4, {0, 1, 2}));
    CHECK(sub.graph == complete_graph(3));

    Graph c5 = cycle_graph(5);
    auto p = induced(c5, VertexSet::of(5, {0, 1, 2, 3}));
    CHECK(p.graph == path_graph(4));

    Graph k23 = complete_bipartite(2, 3);
    auto side = induced(k23, VertexSet::of(5, {2, 3, 4}));
    CHECK(side.graph.edge_count() == 0);
    CHECK(side.graph.vertex_count() == 3);

    // identity on the full vertex set
    auto same = induced(c5, VertexSet::full(5));
    CHECK(same.graph == c5);
}

TEST_CASE("join and disjoint union") {
    Graph k1 = complete_graph(1);
    CHECK(join(k1, k1) == complete_graph(2));

    Graph k2 = complete_graph(2);
    Graph two_k2 = disjoint_union(k2, k2);
    CHECK(two_k2.edge_count() == 2);
    CHECK(components(two_k2).size() == 2);

    Graph co_k2 = Graph::edgeless(2);
    Graph c4 = join(co_k2, co_k2);
    CHECK(c4 == complete_bipartite(2, 2));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int n1 = 1 + int(rng() % 5), n2 = 1 + int(rng() % 5);
        std::vector<std::pair<int, int>> e1, e2;
        for (int u = 0; u < n1; ++u)
            for (int v = u + 1; v < n1; ++v)
                if (rng() % 2) e1.emplace_back(u, v);
        for (int u = 0; u < n2; ++u)
            for (int v = u + 1; v < n2; ++v)
                if (rng() % 2) e2.emplace_back(u, v);
        Graph g1 = Graph::from_edges(n1, e1), g2 = Graph::from_edges(n2, e2);
        CHECK(join(g1, g2).edge_count() ==
              g1.edge_count() + g2.edge_count() + (long long)n1 * n2);
        CHECK(disjoint_union(g1, g2).edge_count() == g1.edge_count() + g2.edge_count());
    }
}

TEST_CASE("neighbors_in and degree_in") {
    Graph k4 = complete_graph(4);
    CHECK(neighbors_in(k4, 0, VertexSet::of(4, {1, 2})) == VertexSet::of(4, {1, 2}));

    Graph p3 = path_graph(3);
    CHECK(neighbors_in(p3, 0, VertexSet::of(3, {2})).empty());

    Graph k4e = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(neighbors_in(k4e, 0, VertexSet::of(4, {1, 2, 3})) == VertexSet::of(4, {2, 3}));
    CHECK(degree_in(k4e, 0, VertexSet::of(4, {1, 2, 3})) == 2);
}

TEST_CASE("path and cycle verification") {
    Graph c5 = cycle_graph(5);
    CHECK(Path({0, 1, 2, 3, 4}).verify(c5));
    CHECK(!Path({0, 2, 4}).verify(c5));
    CHECK(Cycle({0, 1, 2, 3, 4}).is_hamiltonian(c5));
    CHECK(!Cycle({0, 1, 2}).verify(c5));

    Cycle c({3, 4, 0, 1, 2});
    c.canonicalize();
    CHECK(c.vertices == std::vector<int>({0, 1, 2, 3, 4}));
}

TEST_CASE("vertex set lexicographic order") {
    auto a = VertexSet::of(6, {0, 5});
    auto b = VertexSet::of(6, {1, 2});
    CHECK(a.lex_less(b));
    CHECK(!b.lex_less(a));
    auto c = VertexSet::of(6, {1, 2, 3});
    CHECK(b.lex_less(c));  // prefix comes first
    CHECK(!c.lex_less(b));
}
