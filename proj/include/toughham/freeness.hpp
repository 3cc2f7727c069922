#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toughham/graph.hpp"

namespace toughham {

enum class Pattern { P4, P4UnionP1 };

// Vertices inducing the claimed pattern, in pattern order: a-b-c-d is the
// path, e (when present) the isolated fifth vertex.
struct InducedWitness {
    Pattern pattern = Pattern::P4;
    std::vector<int> vertices;

    bool verify(const Graph& g) const {
        if (vertices.size() < 4) return false;
        int a = vertices[0], b = vertices[1], c = vertices[2], d = vertices[3];
        bool path = g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) &&
                    !g.adjacent(a, c) && !g.adjacent(a, d) && !g.adjacent(b, d);
        if (!path) return false;
        if (pattern == Pattern::P4) return vertices.size() == 4;
        if (vertices.size() != 5) return false;
        int e = vertices[4];
        return !g.adjacent(e, a) && !g.adjacent(e, b) && !g.adjacent(e, c) &&
               !g.adjacent(e, d);
    }
};

// First induced P4 under the scan order (middle edge ascending, then the
// outer endpoints ascending), or absent when g is P4-free.
inline std::optional<InducedWitness> find_induced_p4(const Graph& g) {
    int n = g.vertex_count();
    for (int b = 0; b < n; ++b) {
        for (int c = g.neighbors(b).first(); c != -1; c = g.neighbors(b).next_after(c)) {
            // candidates for the two pendant ends of the path a-b-c-d
            VertexSet as = g.neighbors(b) - g.neighbors(c);
            as.erase(c);
            VertexSet ds = g.neighbors(c) - g.neighbors(b);
            ds.erase(b);
            if (!as.any() || !ds.any()) continue;
            for (int a = as.first(); a != -1; a = as.next_after(a)) {
                VertexSet nonadj = ds - g.neighbors(a);
                nonadj.erase(a);
                int d = nonadj.first();
                if (d != -1) return InducedWitness{Pattern::P4, {a, b, c, d}};
            }
        }
    }
    return std::nullopt;
}

// Induced P4 plus a vertex with no edge to it, or absent.
inline std::optional<InducedWitness> find_induced_p4_union_p1(const Graph& g) {
    int n = g.vertex_count();
    if (n < 5) return std::nullopt;
    VertexSet all = VertexSet::full(n);
    for (int b = 0; b < n; ++b) {
        for (int c = g.neighbors(b).first(); c != -1; c = g.neighbors(b).next_after(c)) {
            VertexSet as = g.neighbors(b) - g.neighbors(c);
            as.erase(c);
            VertexSet ds = g.neighbors(c) - g.neighbors(b);
            ds.erase(b);
            if (!as.any() || !ds.any()) continue;
            for (int a = as.first(); a != -1; a = as.next_after(a)) {
                VertexSet cand = ds - g.neighbors(a);
                cand.erase(a);
                for (int d = cand.first(); d != -1; d = cand.next_after(d)) {
                    VertexSet covered = g.neighbors(a) | g.neighbors(b) |
                                        g.neighbors(c) | g.neighbors(d);
                    covered.insert(a);
                    covered.insert(b);
                    covered.insert(c);
                    covered.insert(d);
                    VertexSet isolated = all - covered;
                    int e = isolated.first();
                    if (e != -1)
                        return InducedWitness{Pattern::P4UnionP1, {a, b, c, d, e}};
                }
            }
        }
    }
    return std::nullopt;
}

inline bool is_p4_free(const Graph& g) { return !find_induced_p4(g).has_value(); }

inline bool is_p4_union_p1_free(const Graph& g) {
    return !find_induced_p4_union_p1(g).has_value();
}

// Rooted cotree: leaf(vertex) | union(children) | join(children).  Children
// of a union are never unions themselves, likewise for joins, and are sorted
// by smallest leaf label so equal cographs get equal cotrees.
struct Cotree {
    enum class Kind { Leaf, Union, Join };

    Kind kind = Kind::Leaf;
    int leaf = -1;
    std::vector<Cotree> children;

    int min_leaf() const {
        if (kind == Kind::Leaf) return leaf;
        int best = children.front().min_leaf();
        for (const auto& c : children) best = std::min(best, c.min_leaf());
        return best;
    }

    int leaf_count() const {
        if (kind == Kind::Leaf) return 1;
        int total = 0;
        for (const auto& c : children) total += c.leaf_count();
        return total;
    }

    void collect_leaves(std::vector<int>& out) const {
        if (kind == Kind::Leaf) {
            out.push_back(leaf);
            return;
        }
        for (const auto& c : children) c.collect_leaves(out);
    }

    // Rebuild the graph the cotree encodes, on the original vertex labels.
    Graph evaluate(int universe) const {
        std::vector<std::pair<int, int>> edges;
        add_edges(edges);
        return Graph::from_edges(universe, edges);
    }

    bool operator==(const Cotree& o) const {
        return kind == o.kind && leaf == o.leaf && children == o.children;
    }

    std::string to_string() const {
        if (kind == Kind::Leaf) return std::to_string(leaf);
        std::string s = kind == Kind::Union ? "union(" : "join(";
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (i) s += ",";
            s += children[i].to_string();
        }
        return s + ")";
    }

private:
    void add_edges(std::vector<std::pair<int, int>>& edges) const {
        if (kind == Kind::Leaf) return;
        for (const auto& c : children) c.add_edges(edges);
        if (kind == Kind::Join) {
            for (std::size_t i = 0; i < children.size(); ++i)
                for (std::size_t j = i + 1; j < children.size(); ++j) {
                    std::vector<int> li, lj;
                    children[i].collect_leaves(li);
                    children[j].collect_leaves(lj);
                    for (int u : li)
                        for (int v : lj) edges.emplace_back(u, v);
                }
        }
    }
};

namespace detail {

inline std::variant<Cotree, InducedWitness> cotree_rec(const Graph& g,
                                                       const std::vector<int>& labels) {
    int n = g.vertex_count();
    if (n == 1) {
        Cotree t;
        t.kind = Cotree::Kind::Leaf;
        t.leaf = labels[0];
        return t;
    }

    auto build = [&](Cotree::Kind kind, const std::vector<VertexSet>& parts)
        -> std::variant<Cotree, InducedWitness> {
        Cotree node;
        node.kind = kind;
        for (const auto& part : parts) {
            auto sub = induced(g, part);
            std::vector<int> sublabels(sub.to_parent.size());
            for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
                sublabels[i] = labels[sub.to_parent[i]];
            auto r = cotree_rec(sub.graph, sublabels);
            if (std::holds_alternative<InducedWitness>(r)) return r;
            Cotree child = std::get<Cotree>(std::move(r));
            if (child.kind == kind) {
                for (auto& gc : child.children) node.children.push_back(std::move(gc));
            } else {
                node.children.push_back(std::move(child));
            }
        }
        std::sort(node.children.begin(), node.children.end(),
                  [](const Cotree& a, const Cotree& b) { return a.min_leaf() < b.min_leaf(); });
        return node;
    };

    auto comps = components(g);
    if (comps.size() >= 2) return build(Cotree::Kind::Union, comps);

    auto cocomps = components(complement(g));
    if (cocomps.size() >= 2) return build(Cotree::Kind::Join, cocomps);

    // connected with connected complement: a P4 exists
    auto w = find_induced_p4(g);
    if (!w) raise_structure("cotree: connected graph with connected complement has no P4");
    for (auto& v : w->vertices) v = labels[v];
    return *w;
}

}  // namespace detail

// Canonical cotree when g is P4-free, else a P4 witness.
inline std::variant<Cotree, InducedWitness> cotree(const Graph& g) {
    if (g.vertex_count() == 0) raise_structure("cotree: empty graph");
    std::vector<int> labels(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) labels[i] = i;
    return detail::cotree_rec(g, labels);
}

// Co-components: the maximal parts whose pairwise union-by-join rebuilds g.
inline std::vector<VertexSet> co_components(const Graph& g) {
    return components(complement(g));
}

enum class CompletionStatus { Untouched, Complete, Partial };

struct ComponentCompletion {
    VertexSet component;
    CompletionStatus status;
};

// For each component D of g - s, whether N(x) covers none, all, or part of
// D.  Constructions use this to assert the completeness their steps assume.
inline std::vector<ComponentCompletion> completion_profile(const Graph& g,
                                                           const VertexSet& s, int x) {
    if (!s.contains(x)) throw MalformedInput("completion_profile: x not in s");
    std::vector<ComponentCompletion> out;
    for (const auto& comp : components(g, s)) {
        VertexSet touched = neighbors_in(g, x, comp);
        CompletionStatus st;
        if (!touched.any())
            st = CompletionStatus::Untouched;
        else if (touched == comp)
            st = CompletionStatus::Complete;
        else
            st = CompletionStatus::Partial;
        out.push_back({comp, st});
    }
    return out;
}

// x complete to every component of g - s that it touches.
inline bool complete_to_touched(const Graph& g, const VertexSet& s, int x) {
    for (const auto& e : completion_profile(g, s, x))
        if (e.status == CompletionStatus::Partial) return false;
    return true;
}

}  // namespace toughham
