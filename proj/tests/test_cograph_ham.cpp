#include <doctest.h>

#include <random>

#include "toughham/cograph_ham.hpp"
#include "toughham/oracles.hpp"

using namespace toughham;

TEST_CASE("jung_ham_path basics") {
    auto p3 = jung_ham_path(path_graph(3));
    REQUIRE(std::holds_alternative<Path>(p3));
    CHECK(std::get<Path>(p3).vertices == std::vector<int>({0, 1, 2}));

    auto k23 = jung_ham_path(complete_bipartite(2, 3));
    REQUIRE(std::holds_alternative<Path>(k23));
    CHECK(std::get<Path>(k23).length() == 5);

    auto iso = jung_ham_path(Graph::edgeless(3));
    REQUIRE(std::holds_alternative<Infeasible>(iso));
    CHECK(std::get<Infeasible>(iso).certificate.value == 3);
    CHECK(std::get<Infeasible>(iso).certificate.witness->empty());

    CHECK_THROWS_AS(jung_ham_path(path_graph(4)), MalformedInput);
}

TEST_CASE("jung_ham_cycle basics") {
    auto k3 = jung_ham_cycle(complete_graph(3));
    REQUIRE(std::holds_alternative<Cycle>(k3));

    auto k33 = jung_ham_cycle(complete_bipartite(3, 3));
    REQUIRE(std::holds_alternative<Cycle>(k33));
    CHECK(std::get<Cycle>(k33).is_hamiltonian(complete_bipartite(3, 3)));

    auto k23 = jung_ham_cycle(complete_bipartite(2, 3));
    REQUIRE(std::holds_alternative<Infeasible>(k23));
    CHECK(*std::get<Infeasible>(k23).certificate.witness == VertexSet::of(5, {0, 1}));

    CHECK_THROWS_AS(jung_ham_cycle(complete_graph(2)), MalformedInput);
}

TEST_CASE("jung_ham_connected basics") {
    auto k4 = jung_ham_connected(complete_graph(4), 0, 3);
    REQUIRE(std::holds_alternative<Path>(k4));
    CHECK(std::get<Path>(k4).front() == 0);
    CHECK(std::get<Path>(k4).back() == 3);

    Graph k4e = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto r = jung_ham_connected(k4e, 0, 1);
    REQUIRE(std::holds_alternative<Infeasible>(r));  // uniform guarantee fails at s = 0

    // apex over two disjoint edges: removing the apex leaves s = 1
    Graph apex = join(Graph::edgeless(1), disjoint_union(complete_graph(2), complete_graph(2)));
    auto r2 = jung_ham_connected(apex, 1, 2);
    REQUIRE(std::holds_alternative<Infeasible>(r2));
}

TEST_CASE("jung_path_cover basics") {
    auto one = jung_path_cover(path_graph(3), 0);
    CHECK(one.paths.size() == 1);
    CHECK(one.v1_honored);

    auto two = jung_path_cover(disjoint_union(complete_graph(2), complete_graph(2)));
    CHECK(two.paths.size() == 2);

    auto k4 = jung_path_cover(complete_graph(4), 1, 2);
    REQUIRE(k4.paths.size() == 1);
    CHECK(k4.v1_honored);
    CHECK(k4.v2_honored);
}

TEST_CASE("path covers are basic when s >= 1") {
    std::mt19937_64 seed_src(99);
    for (int n = 2; n <= 8; ++n)
        for (const auto& g : enumerate_cographs(n)) {
            auto cert = scattering(g);
            if (!cert.value || *cert.value < 1) continue;
            auto cover = jung_path_cover(g);
            auto err = check_basic_cover(g, cover.scattering_set, cover.paths,
                                         std::max(1, *cert.value));
            std::string msg = err ? *err : "ok";
            INFO("n=", n, " err=", msg);
            CHECK(!err.has_value());
        }
}

TEST_CASE("construction agrees with the oracle on all cographs up to 8") {
    for (int n = 2; n <= 8; ++n)
        for (const auto& g : enumerate_cographs(n)) {
            auto cert = scattering(g);
            bool expect_path = oracle::ham_path(g).has_value();
            auto rp = jung_ham_path(g);
            CHECK(std::holds_alternative<Path>(rp) == expect_path);
            if (auto* p = std::get_if<Path>(&rp)) {
                CHECK(p->verify(g));
                CHECK(p->length() == n);
            }
            if (n >= 3) {
                bool expect_cycle = oracle::ham_cycle(g).has_value();
                auto rc = jung_ham_cycle(g);
                CHECK(std::holds_alternative<Cycle>(rc) == expect_cycle);
                if (auto* c = std::get_if<Cycle>(&rc)) CHECK(c->is_hamiltonian(g));
            }
            bool expect_conn = cert.is_minus_infinity() || *cert.value < 0;
            for (int u = 0; u < n && n <= 6; ++u)
                for (int v = u + 1; v < n; ++v) {
                    auto rr = jung_ham_connected(g, u, v);
                    CHECK(std::holds_alternative<Path>(rr) == expect_conn);
                    if (auto* p = std::get_if<Path>(&rr)) {
                        CHECK(p->verify(g));
                        CHECK(p->front() == u);
                        CHECK(p->back() == v);
                        CHECK(p->length() == n);
                    }
                }
        }
}

TEST_CASE("construction agrees with the oracle on random cographs up to 14") {
    for (int trial = 0; trial < 500; ++trial) {
        auto inst = generate({"random-cograph", {5 + trial % 10}, std::uint64_t(trial)});
        const Graph& g = inst.graph;
        int n = g.vertex_count();
        auto cert = scattering(g);

        auto rp = jung_ham_path(g);
        CHECK(std::holds_alternative<Path>(rp) == oracle::ham_path(g).has_value());

        auto rc = jung_ham_cycle(g);
        CHECK(std::holds_alternative<Cycle>(rc) == oracle::ham_cycle(g).has_value());

        std::mt19937_64 rng(trial * 31 + 1);
        int u = int(rng() % n), v = int(rng() % n);
        if (u != v) {
            auto rr = jung_ham_connected(g, u, v);
            bool expect = cert.is_minus_infinity() || *cert.value < 0;
            CHECK(std::holds_alternative<Path>(rr) == expect);
        }

        auto cover = jung_path_cover(g);
        int expected = cert.value ? std::max(1, *cert.value) : 1;
        CHECK(int(cover.paths.size()) == expected);
    }
}

TEST_CASE("path cover endpoint promises") {
    for (int n = 2; n <= 7; ++n)
        for (const auto& g : enumerate_cographs(n)) {
            auto cert = scattering(g);
            for (int v1 = 0; v1 < n; ++v1) {
                auto cover = jung_path_cover(g, v1);
                bool promised = cert.value_at_most(0) ||
                                (cert.witness && !cert.witness->contains(v1));
                if (promised) CHECK(cover.v1_honored);
            }
            if (cert.is_minus_infinity() || *cert.value < 0) {
                for (int v1 = 0; v1 < n; ++v1)
                    for (int v2 = 0; v2 < n; ++v2) {
                        if (v1 == v2) continue;
                        auto cover = jung_path_cover(g, v1, v2);
                        CHECK(cover.v2_honored);
                    }
            }
        }
}

TEST_CASE("ham_connected_wrt on the smallest instance") {
    Graph k4e = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    VertexSet s = VertexSet::of(4, {2, 3});
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}}) {
        Path p = ham_connected_wrt(k4e, s, u, v);
        CHECK(p.verify(k4e));
        CHECK(p.length() == 4);
        CHECK(p.front() == u);
        CHECK(p.back() == v);
    }
    CHECK_THROWS_AS(ham_connected_wrt(k4e, s, 2, 3), HypothesisError);
}

TEST_CASE("ham_connected_wrt across every maximum scattering set, n <= 7") {
    for (int n = 4; n <= 7; ++n)
        for (const auto& g : enumerate_cographs(n)) {
            auto cert = scattering(g);
            if (!cert.value || *cert.value != 0) continue;
            VertexSet su(n), sv(n);
            if (detail_ch::is_balanced_complete_bipartite(g, su, sv)) continue;
            int max_card = cert.witness->count();
            // enumerate all maximum scattering sets
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                if (__builtin_popcount(mask) != max_card) continue;
                VertexSet s(n);
                for (int v = 0; v < n; ++v)
                    if (mask >> v & 1) s.insert(v);
                int c = component_count(g, s);
                if (c < 2 || c - s.count() != 0) continue;
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v) {
                        if (u == v || (s.contains(u) && s.contains(v))) continue;
                        Path p = ham_connected_wrt(g, s, u, v);
                        CHECK(p.verify(g));
                        CHECK(p.length() == n);
                        CHECK(p.front() == u);
                        CHECK(p.back() == v);
                    }
            }
        }
}
