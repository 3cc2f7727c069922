#include <doctest.h>

#include <set>

#include "toughham/oracles.hpp"

using namespace toughham;

namespace {

// Petersen graph: outer C5, inner 5-star polygon, spokes.
Graph petersen() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
        e.emplace_back(i, 5 + i);
    }
    return Graph::from_edges(10, e);
}

// canonical form by trying all vertex permutations (tiny n only)
std::vector<std::pair<int, int>> canonical_edges(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::pair<int, int>> best;
    bool first = true;
    do {
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges()) {
            int a = perm[u], b = perm[v];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges.begin(), edges.end());
        if (first || edges < best) {
            best = edges;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("hamiltonicity oracle on classics") {
    auto c5 = oracle::ham_cycle(cycle_graph(5));
    REQUIRE(c5.has_value());
    CHECK(c5->is_hamiltonian(cycle_graph(5)));

    Graph k23 = complete_bipartite(2, 3);
    CHECK(!oracle::ham_cycle(k23).has_value());
    auto p = oracle::ham_path(k23);
    REQUIRE(p.has_value());
    CHECK(p->verify(k23));
    CHECK(p->length() == 5);

    CHECK(!oracle::ham_cycle(petersen()).has_value());
    CHECK(oracle::ham_path(petersen()).has_value());
}

TEST_CASE("anchored oracle paths") {
    Graph k4 = complete_graph(4);
    auto p = oracle::ham_path(k4, 0, 3);
    REQUIRE(p.has_value());
    CHECK(p->front() == 0);
    CHECK(p->back() == 3);

    // C4: opposite vertices admit no Hamiltonian path between them
    Graph c4 = cycle_graph(4);
    CHECK(!oracle::ham_path(c4, 0, 2).has_value());
    CHECK(oracle::ham_path(c4, 0, 1).has_value());
}

TEST_CASE("cograph enumeration counts") {
    const int expected[] = {0, 1, 2, 4, 10, 24, 66, 180, 522};
    for (int n = 1; n <= 8; ++n) CHECK(int(enumerate_cographs(n).size()) == expected[n]);
}

TEST_CASE("enumerated cographs are P4-free and pairwise non-isomorphic") {
    for (int n = 1; n <= 7; ++n) {
        auto gs = enumerate_cographs(n);
        std::set<std::vector<std::pair<int, int>>> seen;
        for (const auto& g : gs) {
            CHECK(is_p4_free(g));
            CHECK(seen.insert(canonical_edges(g)).second);
        }
    }
}

TEST_CASE("4-vertex cographs match the isomorphism-filtered brute force") {
    // enumerate all labeled 4-vertex graphs, keep P4-free ones, count up to
    // isomorphism and compare
    std::set<std::vector<std::pair<int, int>>> classes;
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) all.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 6; ++i)
            if (mask >> i & 1) edges.push_back(all[i]);
        Graph g = Graph::from_edges(4, edges);
        if (is_p4_free(g)) classes.insert(canonical_edges(g));
    }
    CHECK(classes.size() == enumerate_cographs(4).size());
}

TEST_CASE("generator certificates") {
    auto big = generate({"clique-join", {46, 1, 1}, 0});
    CHECK(big.graph.vertex_count() == 48);
    CHECK(big.toughness->value == Rational(23));
    CHECK(big.p4_free);
    CHECK(big.p4_union_p1_free);

    auto two = generate({"clique-join", {9, 12, 12}, 0});
    CHECK(two.toughness->value == Rational(9, 2));

    // formula certificate cross-checked by brute force at small scale
    for (auto params : std::vector<std::vector<int>>{{3, 2, 2}, {5, 1, 1, 1}, {4, 3, 1}}) {
        auto inst = generate({"clique-join", params, 0});
        CHECK(inst.toughness->value == oracle::toughness_bruteforce(inst.graph).value);
    }

    auto rc = generate({"random-cograph", {10}, 12345});
    CHECK(rc.graph.vertex_count() == 10);
    CHECK(rc.p4_free);
    // same seed, same graph
    auto rc2 = generate({"random-cograph", {10}, 12345});
    CHECK(rc.graph == rc2.graph);
}
