#include <doctest.h>

#include <sstream>

#include "toughham/io.hpp"
#include "toughham/oracles.hpp"

using namespace toughham;

TEST_CASE("graph parsing round-trips") {
    Graph g = clique_join(4, {2, 1});
    std::stringstream ss;
    write_graph(ss, g);
    Graph back = parse_graph(ss);
    CHECK(back == g);
}

TEST_CASE("graph parsing accepts comments and blank lines") {
    std::stringstream ss("# a graph\n3 2\n0 1\n\n# middle\n1 2\n");
    Graph g = parse_graph(ss);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("graph parsing rejects malformed input") {
    auto reject = [](const std::string& text) {
        std::stringstream ss(text);
        CHECK_THROWS_AS(parse_graph(ss), MalformedInput);
    };
    reject("definitely not a header\n");
    reject("3 1\n0 3\n");        // endpoint out of range
    reject("3 1\n1 1\n");        // self-loop
    reject("3 2\n0 1\n");        // fewer edges than declared
    reject("3 2\n0 1\n0 1\n");   // duplicate edge
}

TEST_CASE("violation JSON carries the witness") {
    HypothesisViolation v;
    v.kind = ViolationKind::ToughnessWrt;
    v.claim = "example";
    v.witness_set = VertexSet::of(5, {1, 3});
    v.ratio = Rational(3, 2);
    auto j = violation_to_json(v);
    CHECK(j["kind"] == "toughness-wrt");
    CHECK(j["witness"] == nlohmann::json({1, 3}));
    CHECK(j["ratio"] == "3/2");
}
