#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "toughham/errors.hpp"
#include "toughham/vertex_set.hpp"

namespace toughham {

// Immutable simple undirected graph over vertex ids 0..n-1, adjacency kept
// as one dense vertex set per vertex.  "Mutation" is always construction of
// a new graph through the factories below.
class Graph {
public:
    Graph() = default;

    static Graph edgeless(int n) { return Graph(n); }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw MalformedInput("edge endpoint out of range");
            if (u == v) throw MalformedInput("self-loop");
            g.add_edge(u, v);
        }
        return g;
    }

    int vertex_count() const { return n_; }

    bool adjacent(int u, int v) const {
        if (u == v) return false;
        return adj_[u].contains(v);
    }

    const VertexSet& neighbors(int v) const { return adj_[v]; }

    int degree(int v) const { return adj_[v].count(); }

    long long edge_count() const {
        long long total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return total / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    VertexSet vertices() const { return VertexSet::full(n_); }

    bool is_complete() const {
        for (int v = 0; v < n_; ++v)
            if (degree(v) != n_ - 1) return false;
        return true;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    explicit Graph(int n) : n_(n), adj_(n, VertexSet(n)) {}

    void add_edge(int u, int v) {
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    int n_ = 0;
    std::vector<VertexSet> adj_;

    friend Graph join(const Graph&, const Graph&);
    friend Graph disjoint_union(const Graph&, const Graph&);
    friend Graph complement(const Graph&);
};

// Connected components of g - removed, disjoint, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& removed) {
    int n = g.vertex_count();
    std::vector<VertexSet> out;
    VertexSet todo = VertexSet::full(n) - removed;
    while (todo.any()) {
        int seed = todo.first();
        VertexSet comp(n);
        comp.insert(seed);
        VertexSet frontier = comp;
        while (frontier.any()) {
            VertexSet next(n);
            frontier.for_each([&](int v) { next |= g.neighbors(v); });
            next &= todo;
            next -= comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        todo -= comp;
    }
    return out;
}

inline std::vector<VertexSet> components(const Graph& g) {
    return components(g, VertexSet(g.vertex_count()));
}

inline int component_count(const Graph& g, const VertexSet& removed) {
    return int(components(g, removed).size());
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    return component_count(g, VertexSet(g.vertex_count())) == 1;
}

inline bool is_cutset(const Graph& g, const VertexSet& s) {
    return component_count(g, s) >= 2;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;  // new id -> old id, ascending

    int to_child(int parent_id) const {
        auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent_id);
        if (it == to_parent.end() || *it != parent_id) return -1;
        return int(it - to_parent.begin());
    }
};

// G[s], relabeled to 0..|s|-1 in ascending order of the old ids.
inline InducedSubgraph induced(const Graph& g, const VertexSet& s) {
    InducedSubgraph out;
    out.to_parent = s.to_vector();
    int m = int(out.to_parent.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.adjacent(out.to_parent[i], out.to_parent[j])) edges.emplace_back(i, j);
    out.graph = Graph::from_edges(m, edges);
    return out;
}

// Join: all cross edges added; ids of g2 shifted by |V(g1)|.
inline Graph join(const Graph& g1, const Graph& g2) {
    int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    Graph g(n1 + n2);
    for (auto [u, v] : g1.edges()) g.add_edge(u, v);
    for (auto [u, v] : g2.edges()) g.add_edge(u + n1, v + n1);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) g.add_edge(u, n1 + v);
    return g;
}

inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
    int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    Graph g(n1 + n2);
    for (auto [u, v] : g1.edges()) g.add_edge(u, v);
    for (auto [u, v] : g2.edges()) g.add_edge(u + n1, v + n1);
    return g;
}

inline Graph complement(const Graph& g) {
    int n = g.vertex_count();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    return c;
}

inline VertexSet neighbors_in(const Graph& g, int v, const VertexSet& s) {
    return g.neighbors(v) & s;
}

inline int degree_in(const Graph& g, int v, const VertexSet& s) {
    return neighbors_in(g, v, s).count();
}

// N(S) \ S restricted to the whole graph.
inline VertexSet neighborhood_of_set(const Graph& g, const VertexSet& s) {
    VertexSet out(g.vertex_count());
    s.for_each([&](int v) { out |= g.neighbors(v); });
    out -= s;
    return out;
}

// Ordered sequence of distinct vertices, consecutive ones adjacent.
struct Path {
    std::vector<int> vertices;

    Path() = default;
    explicit Path(std::vector<int> vs) : vertices(std::move(vs)) {}

    int length() const { return int(vertices.size()); }
    bool empty() const { return vertices.empty(); }
    int front() const { return vertices.front(); }
    int back() const { return vertices.back(); }

    Path reversed() const {
        Path p = *this;
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
    }

    bool verify(const Graph& g) const {
        VertexSet seen(g.vertex_count());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            int v = vertices[i];
            if (v < 0 || v >= g.vertex_count() || seen.contains(v)) return false;
            seen.insert(v);
            if (i > 0 && !g.adjacent(vertices[i - 1], v)) return false;
        }
        return true;
    }

    VertexSet vertex_set(int universe) const {
        VertexSet s(universe);
        for (int v : vertices) s.insert(v);
        return s;
    }
};

// Cyclic sequence of >= 3 distinct vertices with a fixed orientation.
struct Cycle {
    std::vector<int> vertices;

    Cycle() = default;
    explicit Cycle(std::vector<int> vs) : vertices(std::move(vs)) {}

    int length() const { return int(vertices.size()); }

    int successor_index(int i) const { return (i + 1) % int(vertices.size()); }

    bool verify(const Graph& g) const {
        if (vertices.size() < 3) return false;
        VertexSet seen(g.vertex_count());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            int v = vertices[i];
            if (v < 0 || v >= g.vertex_count() || seen.contains(v)) return false;
            seen.insert(v);
            if (!g.adjacent(v, vertices[(i + 1) % vertices.size()])) return false;
        }
        return true;
    }

    bool is_hamiltonian(const Graph& g) const {
        return int(vertices.size()) == g.vertex_count() && verify(g);
    }

    VertexSet vertex_set(int universe) const {
        VertexSet s(universe);
        for (int v : vertices) s.insert(v);
        return s;
    }

    // Rotate so the smallest vertex comes first; orientation kept.
    void canonicalize() {
        if (vertices.empty()) return;
        auto it = std::min_element(vertices.begin(), vertices.end());
        std::rotate(vertices.begin(), it, vertices.end());
    }
};

}  // namespace toughham
