#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "toughham/connectivity.hpp"
#include "toughham/graph.hpp"

namespace toughham {

// Text graph format: a header line "n m", then m lines "u v" with 0-based
// ids; '#' starts a comment line.  Duplicate edges are rejected.
inline Graph parse_graph(std::istream& in) {
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<std::pair<int, int>> edges;
    VertexSet seen;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> m)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    n = -1;
                    continue;
                }
                throw MalformedInput("graph header must read: n m");
            }
            if (n < 0 || m < 0) throw MalformedInput("negative sizes in the header");
            continue;
        }
        int u, v;
        if (!(ls >> u >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw MalformedInput("edge line must read: u v");
        }
        if (u < 0 || v < 0 || u >= n || v >= n) throw MalformedInput("edge endpoint out of range");
        if (u == v) throw MalformedInput("self-loop");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw MalformedInput("missing header");
    if ((long long)edges.size() != m) throw MalformedInput("edge count differs from the header");
    Graph g = Graph::from_edges(n, edges);
    if (g.edge_count() != (long long)edges.size()) throw MalformedInput("duplicate edge");
    return g;
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    auto edges = g.edges();
    out << g.vertex_count() << " " << edges.size() << "\n";
    for (auto [u, v] : edges) out << u << " " << v << "\n";
}

inline void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot open " + path + " for writing");
    write_graph(out, g);
}

// vertex set file: whitespace-separated ids, '#' comments
inline VertexSet load_vertex_set(const std::string& path, int universe) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    VertexSet s(universe);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int v;
        while (ls >> v) {
            if (v < 0 || v >= universe) throw MalformedInput("set member out of range");
            s.insert(v);
        }
    }
    return s;
}

inline nlohmann::json set_to_json(const VertexSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    s.for_each([&](int v) { arr.push_back(v); });
    return arr;
}

inline nlohmann::json violation_to_json(const HypothesisViolation& v) {
    nlohmann::json j;
    j["kind"] = to_string(v.kind);
    j["claim"] = v.claim;
    if (v.witness_set) j["witness"] = set_to_json(*v.witness_set);
    if (v.ratio) j["ratio"] = v.ratio->to_string();
    if (v.missing_edge)
        j["missing_edge"] = {v.missing_edge->first, v.missing_edge->second};
    return j;
}

}  // namespace toughham
