#include <doctest.h>

#include <random>

#include "toughham/matchings.hpp"
#include "toughham/oracles.hpp"

using namespace toughham;

namespace {

// The twelve s-vertices 0..11 over three components: an edge {12,13}, a
// triangle {14,15,16}, and a five-vertex component {17..21} whose two upper
// vertices {20,21} cut it into three singletons.  The s-edges are exactly
// the drawn assignment of four partners per component.
struct FigureOne {
    Graph g;
    VertexSet s;
    VertexSet d1, d2, d3;
    FigureOne() {
        std::vector<std::pair<int, int>> e = {
            {12, 13},                                           // D1
            {14, 15}, {14, 16}, {15, 16},                       // D2
            {17, 20}, {18, 20}, {18, 21}, {19, 21}, {19, 20}, {17, 21},  // D3
            {0, 12},  {1, 12},  {2, 13},  {3, 13},              // partners of D1
            {4, 14},  {5, 16},  {6, 16},  {7, 15},              // partners of D2
            {8, 17},  {9, 20},  {10, 21}, {11, 19},             // partners of D3
        };
        g = Graph::from_edges(22, e);
        s = VertexSet(22);
        for (int v = 0; v < 12; ++v) s.insert(v);
        d1 = VertexSet::of(22, {12, 13});
        d2 = VertexSet::of(22, {14, 15, 16});
        d3 = VertexSet::of(22, {17, 18, 19, 20, 21});
    }
};

Graph random_bipartite(int nl, int nr, double p, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < nl; ++u)
        for (int v = 0; v < nr; ++v)
            if (coin(rng) < p) edges.emplace_back(u, nl + v);
    return Graph::from_edges(nl + nr, edges);
}

}  // namespace

TEST_CASE("maximum matching sizes") {
    Graph k23 = complete_bipartite(2, 3);
    CHECK(max_bipartite_matching(k23, VertexSet::of(5, {0, 1}), VertexSet::of(5, {2, 3, 4}))
              .edges.size() == 2);

    Graph c6 = cycle_graph(6);
    CHECK(max_bipartite_matching(c6, VertexSet::of(6, {0, 2, 4}), VertexSet::of(6, {1, 3, 5}))
              .edges.size() == 3);

    Graph star = complete_bipartite(1, 4);
    CHECK(max_bipartite_matching(star, VertexSet::of(5, {0}), VertexSet::of(5, {1, 2, 3, 4}))
              .edges.size() == 1);
}

TEST_CASE("minimum vertex covers") {
    Graph k23 = complete_bipartite(2, 3);
    CHECK(min_vertex_cover(k23, VertexSet::of(5, {0, 1}), VertexSet::of(5, {2, 3, 4})) ==
          VertexSet::of(5, {0, 1}));

    // perfect matching: one endpoint per edge
    Graph m3 = Graph::from_edges(6, {{0, 3}, {1, 4}, {2, 5}});
    auto cover = min_vertex_cover(m3, VertexSet::of(6, {0, 1, 2}), VertexSet::of(6, {3, 4, 5}));
    CHECK(cover.count() == 3);

    Graph star = complete_bipartite(1, 4);
    CHECK(min_vertex_cover(star, VertexSet::of(5, {0}), VertexSet::of(5, {1, 2, 3, 4})) ==
          VertexSet::of(5, {0}));
}

TEST_CASE("koenig duality on random bipartite graphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        int nl = 1 + int(rng() % 20), nr = 1 + int(rng() % 20);
        Graph g = random_bipartite(nl, nr, 0.05 + 0.9 * (trial % 7) / 6.0, rng);
        VertexSet left(nl + nr), right(nl + nr);
        for (int v = 0; v < nl; ++v) left.insert(v);
        for (int v = nl; v < nl + nr; ++v) right.insert(v);
        auto m = max_bipartite_matching(g, left, right);
        auto cover = min_vertex_cover(g, left, right);
        CHECK(int(m.edges.size()) == cover.count());
        // the cover really covers
        for (auto [u, v] : g.edges())
            CHECK((cover.contains(u) || cover.contains(v)));
    }
}

TEST_CASE("good star-matchings on the figure instance") {
    FigureOne fig;

    auto check_component = [&](const VertexSet& d) {
        auto res = good_star_matching(fig.g, fig.s, d, 4);
        REQUIRE(std::holds_alternative<GoodMatchingCertificate>(res));
        auto& cert = std::get<GoodMatchingCertificate>(res);
        CHECK(!validate_good_star_matching(fig.g, cert).has_value());
        CHECK(cert.matching.edge_count() == 4);
        return cert;
    };

    auto c1 = check_component(fig.d1);  // two K_{1,2} stars
    for (const auto& st : c1.matching.stars) CHECK(st.leaves.size() == 2);

    auto c2 = check_component(fig.d2);  // three stars, sizes 1/1/2
    CHECK(c2.matching.stars.size() == 3);

    auto c3 = check_component(fig.d3);  // plain matching, half outside W = {20,21}
    REQUIRE(c3.cutset_w.has_value());
    CHECK(*c3.cutset_w == VertexSet::of(22, {20, 21}));
    int outside = (c3.matching.covered_centers(22) - *c3.cutset_w).count();
    CHECK(outside >= 2);

    // the drawn matching itself certifies as good
    GoodMatchingCertificate drawn;
    drawn.matching.stars = {{17, {8}}, {19, {11}}, {20, {9}}, {21, {10}}};
    drawn.r = 4;
    drawn.component = fig.d3;
    drawn.s_side = neighborhood_of_set(fig.g, fig.d3) & fig.s;
    drawn.cutset_w = VertexSet::of(22, {20, 21});
    auto err = validate_good_star_matching(fig.g, drawn);
    std::string msg = err ? *err : "ok";
    INFO(msg);
    CHECK(!err.has_value());
}

TEST_CASE("good star-matching infeasibility witness") {
    // a singleton component with one s-neighbor cannot host two star edges
    Graph g = Graph::from_edges(4, {{0, 3}, {1, 2}, {0, 1}, {0, 2}});
    VertexSet s = VertexSet::of(4, {0, 1});
    auto res = good_star_matching(g, s, VertexSet::of(4, {3}), 2);
    REQUIRE(std::holds_alternative<MatchingObstruction>(res));
    auto& obs = std::get<MatchingObstruction>(res);
    CHECK(obs.blocker.count() <= 1);
    CHECK(obs.verify(g, VertexSet::of(4, {3}),
                     neighborhood_of_set(g, VertexSet::of(4, {3})) & s));
}

TEST_CASE("required vertex joins a good star-matching") {
    FigureOne fig;
    VertexSet usable = neighborhood_of_set(fig.g, fig.d3) & fig.s;
    usable.for_each([&](int x) {
        auto res = good_star_matching(fig.g, fig.s, fig.d3, 4, x);
        REQUIRE(std::holds_alternative<GoodMatchingCertificate>(res));
        auto& cert = std::get<GoodMatchingCertificate>(res);
        CHECK(cert.matching.covered_leaves(22).contains(x));
        CHECK(!validate_good_star_matching(fig.g, cert).has_value());
    });
}

TEST_CASE("generalized matching reproduces the figure assignment") {
    FigureOne fig;
    auto res = generalized_k1r_matching(fig.g, fig.s, 4);
    REQUIRE(std::holds_alternative<GeneralizedMatching>(res));
    auto& gm = std::get<GeneralizedMatching>(res);
    REQUIRE(gm.assignments.size() == 3);
    CHECK(gm.assignments[0].partners == VertexSet::of(22, {0, 1, 2, 3}));
    CHECK(gm.assignments[1].partners == VertexSet::of(22, {4, 5, 6, 7}));
    CHECK(gm.assignments[2].partners == VertexSet::of(22, {8, 9, 10, 11}));
    VertexSet seen(22);
    for (const auto& a : gm.assignments) {
        CHECK(a.partners.count() == 4);
        CHECK(!seen.intersects(a.partners));
        seen |= a.partners;
        CHECK(!validate_good_star_matching(fig.g, a.certificate).has_value());
    }
}

TEST_CASE("generalized matching on a certified join") {
    // K9 joined over two singletons: each gets a disjoint partner pair
    Graph g = clique_join(9, {1, 1});
    VertexSet s(11);
    for (int v = 0; v < 9; ++v) s.insert(v);
    auto res = generalized_k1r_matching(g, s, 2);
    REQUIRE(std::holds_alternative<GeneralizedMatching>(res));
    auto& gm = std::get<GeneralizedMatching>(res);
    REQUIRE(gm.assignments.size() == 2);
    CHECK(!gm.assignments[0].partners.intersects(gm.assignments[1].partners));
}

TEST_CASE("pigeonhole infeasibility yields a violating cutset") {
    // two singleton components fighting over one shared s-vertex
    Graph g = Graph::from_edges(5, {{0, 3}, {0, 4}, {0, 1}, {1, 2}, {2, 0}});
    VertexSet s = VertexSet::of(5, {0, 1, 2});
    auto res = generalized_k1r_matching(g, s, 2);
    REQUIRE(std::holds_alternative<GeneralizedObstruction>(res));
    auto& obs = std::get<GeneralizedObstruction>(res);
    CHECK(component_count(g, obs.cutset) >= 2);
}

namespace {

// fixture with a dense s-side so the toughness hypothesis actually holds
std::optional<std::pair<Graph, VertexSet>> tough_fixture(std::mt19937_64& rng) {
    int s_size = 9 + int(rng() % 5);
    std::vector<Graph> comps;
    int total = s_size;
    for (int i = 0; i < 2; ++i) {
        int sz = 1 + int(rng() % 3);
        comps.push_back(generate({"random-cograph", {sz}, rng()}).graph);
        total += sz;
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < s_size; ++u)
        for (int v = u + 1; v < s_size; ++v)
            if (rng() % 10 != 0) edges.emplace_back(u, v);
    int off = s_size;
    for (const auto& c : comps) {
        for (auto [u, v] : c.edges()) edges.emplace_back(off + u, off + v);
        for (int v = 0; v < c.vertex_count(); ++v)
            for (int u = 0; u < s_size; ++u)
                if (rng() % 8 != 0) edges.emplace_back(u, off + v);
        off += c.vertex_count();
    }
    Graph g = Graph::from_edges(total, edges);
    VertexSet s(total);
    for (int v = 0; v < s_size; ++v) s.insert(v);
    if (!is_cutset(g, s)) return std::nullopt;
    return std::make_pair(g, s);
}

// sparse fixture, usually violating the hypothesis; exercises infeasibility
std::optional<std::pair<Graph, VertexSet>> sparse_fixture(std::mt19937_64& rng) {
    int s_size = 4 + int(rng() % 4);
    std::vector<Graph> comps;
    int total = s_size;
    for (int i = 0; i < 2 + int(rng() % 2); ++i) {
        int sz = 1 + int(rng() % 2);
        comps.push_back(generate({"random-cograph", {sz}, rng()}).graph);
        total += sz;
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < s_size; ++u)
        for (int v = u + 1; v < s_size; ++v)
            if (rng() % 3 != 0) edges.emplace_back(u, v);
    int off = s_size;
    for (const auto& c : comps) {
        for (auto [u, v] : c.edges()) edges.emplace_back(off + u, off + v);
        for (int v = 0; v < c.vertex_count(); ++v)
            for (int u = 0; u < s_size; ++u)
                if (rng() % 2 == 0) edges.emplace_back(u, off + v);
        off += c.vertex_count();
    }
    Graph g = Graph::from_edges(total, edges);
    VertexSet s(total);
    for (int v = 0; v < s_size; ++v) s.insert(v);
    if (!is_cutset(g, s)) return std::nullopt;
    return std::make_pair(g, s);
}

}  // namespace

TEST_CASE("generalized matching succeeds under the toughness hypothesis") {
    std::mt19937_64 rng(777);
    int done = 0;
    std::vector<Rational> levels = {Rational(4), Rational(9, 2), Rational(5)};
    while (done < 200) {
        auto fx = tough_fixture(rng);
        if (!fx) continue;
        auto [g, s] = *fx;
        const Rational& t = levels[done % levels.size()];
        int r = int((t.num() / t.den()) / 2);  // floor(t/2)
        if (is_t_tough_wrt(g, s, t).has_value()) continue;  // hypothesis not met
        auto res = generalized_k1r_matching(g, s, r);
        REQUIRE(std::holds_alternative<GeneralizedMatching>(res));
        auto& gm = std::get<GeneralizedMatching>(res);
        VertexSet seen(g.vertex_count());
        for (const auto& a : gm.assignments) {
            CHECK(a.partners.count() == r);
            CHECK(!seen.intersects(a.partners));
            seen |= a.partners;
            CHECK(!validate_good_star_matching(g, a.certificate).has_value());
        }
        ++done;
    }
    CHECK(done == 200);
}

TEST_CASE("generalized matching infeasibility witnesses are sound") {
    std::mt19937_64 rng(31337);
    auto saved = config().matching_node_budget;
    config().matching_node_budget = 30000;
    int infeasible_seen = 0, tried = 0;
    while (infeasible_seen < 40 && tried < 4000) {
        auto fx = sparse_fixture(rng);
        if (!fx) continue;
        ++tried;
        auto [g, s] = *fx;
        try {
            auto res = generalized_k1r_matching(g, s, 2);
            if (auto* obs = std::get_if<GeneralizedObstruction>(&res)) {
                // the witness is a genuine cutset whose ratio it reports
                int c = component_count(g, obs->cutset);
                CHECK(c >= 2);
                CHECK(Rational(obs->cutset.count(), c) == obs->ratio);
                // it qualifies against s and defeats 4-toughness
                for (const auto& comp : components(g, s))
                    CHECK((comp - obs->cutset).any());
                CHECK(obs->ratio < Rational(4));
                ++infeasible_seen;
            }
        } catch (const SearchExhaustedError&) {
            // bounded search may give up without a witness; that is allowed
        }
    }
    config().matching_node_budget = saved;
    CHECK(infeasible_seen >= 40);
}
