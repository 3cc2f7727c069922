#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "toughham/connectivity.hpp"
#include "toughham/freeness.hpp"
#include "toughham/graph.hpp"

namespace toughham {

// ---------------------------------------------------------------------------
// Exact Hamiltonicity oracles: subset dynamic programming over
// (visited set, last vertex) states.  Independent of every constructive
// routine in this library; the test suites cross-check against these.
// ---------------------------------------------------------------------------

namespace oracle {

namespace detail {

// dp[mask] = set of possible end vertices of a path starting at `start`
// visiting exactly `mask`.
inline std::vector<std::uint32_t> path_dp(const toughham::detail::MaskGraph& mg, int start) {
    int n = mg.n;
    std::vector<std::uint32_t> dp(std::size_t(1) << n, 0);
    dp[std::uint32_t{1} << start] = std::uint32_t{1} << start;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        while (ends) {
            int v = __builtin_ctz(ends);
            ends &= ends - 1;
            std::uint32_t nbrs = std::uint32_t(mg.adj[v]) & ~mask;
            while (nbrs) {
                int u = __builtin_ctz(nbrs);
                nbrs &= nbrs - 1;
                dp[mask | (std::uint32_t{1} << u)] |= std::uint32_t{1} << u;
            }
        }
    }
    return dp;
}

inline std::vector<int> reconstruct(const toughham::detail::MaskGraph& mg,
                                    const std::vector<std::uint32_t>& dp,
                                    std::uint32_t mask, int end) {
    std::vector<int> rev;
    int cur = end;
    while (true) {
        rev.push_back(cur);
        std::uint32_t prev_mask = mask & ~(std::uint32_t{1} << cur);
        if (!prev_mask) break;
        std::uint32_t cands = dp[prev_mask] & std::uint32_t(mg.adj[cur]);
        cur = __builtin_ctz(cands);
        mask = prev_mask;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

}  // namespace detail

inline void check_cap(const Graph& g) {
    if (g.vertex_count() > config().oracle_cap)
        throw InstanceTooLarge("oracle: n exceeds the DP cap");
}

inline std::optional<Cycle> ham_cycle(const Graph& g) {
    check_cap(g);
    int n = g.vertex_count();
    if (n < 3) return std::nullopt;
    auto verts = VertexSet::full(n).to_vector();
    auto mg = toughham::detail::MaskGraph::from(g, verts);
    auto dp = detail::path_dp(mg, 0);
    std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::uint32_t closers = dp[full] & std::uint32_t(mg.adj[0]);
    if (!closers) return std::nullopt;
    auto vs = detail::reconstruct(mg, dp, full, __builtin_ctz(closers));
    return Cycle(vs);
}

inline std::optional<Path> ham_path(const Graph& g, std::optional<int> u = std::nullopt,
                                    std::optional<int> v = std::nullopt) {
    check_cap(g);
    int n = g.vertex_count();
    if (n == 0) return std::nullopt;
    if (n == 1) {
        if (u && v) return std::nullopt;
        return Path({0});
    }
    auto verts = VertexSet::full(n).to_vector();
    auto mg = toughham::detail::MaskGraph::from(g, verts);
    std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<int> starts;
    if (u)
        starts.push_back(*u);
    else
        for (int s = 0; s < n; ++s) starts.push_back(s);
    for (int s : starts) {
        auto dp = detail::path_dp(mg, s);
        std::uint32_t ends = dp[full];
        if (v) ends &= std::uint32_t{1} << *v;
        if (u && !v) ends &= ~(std::uint32_t{1} << s);
        if (!ends) continue;
        return Path(detail::reconstruct(mg, dp, full, __builtin_ctz(ends)));
    }
    return std::nullopt;
}

inline bool is_ham_connected(const Graph& g) {
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!ham_path(g, u, v)) return false;
    return true;
}

// Reduction-free brute force twins of toughness/scattering, kept separate
// from the production path on purpose.
inline ToughnessCertificate toughness_bruteforce(const Graph& g) {
    int n = g.vertex_count();
    if (n > 20) throw InstanceTooLarge("toughness_bruteforce: n > 20");
    auto verts = VertexSet::full(n).to_vector();
    auto mg = toughham::detail::MaskGraph::from(g, verts);
    std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::optional<Rational> best;
    std::uint64_t best_mask = 0;
    int best_card = -1;
    toughham::detail::for_each_subset_by_cardinality(n, [&](std::uint64_t mask, int k) {
        int c = mg.component_count(full & ~mask);
        if (c >= 2) {
            Rational ratio(k, c);
            if (!best || ratio < *best || (ratio == *best && k > best_card)) {
                best = ratio;
                best_mask = mask;
                best_card = k;
            }
        }
        return true;
    });
    if (!best) return {Rational::infinity(), std::nullopt};
    return {*best, toughham::detail::mask_to_set(best_mask, verts, n)};
}

inline ScatteringCertificate scattering_bruteforce(const Graph& g) {
    int n = g.vertex_count();
    if (n > 20) throw InstanceTooLarge("scattering_bruteforce: n > 20");
    auto verts = VertexSet::full(n).to_vector();
    auto mg = toughham::detail::MaskGraph::from(g, verts);
    std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::optional<int> best;
    std::uint64_t best_mask = 0;
    int best_card = -1;
    toughham::detail::for_each_subset_by_cardinality(n, [&](std::uint64_t mask, int k) {
        int c = mg.component_count(full & ~mask);
        if (c >= 2) {
            int value = c - k;
            if (!best || value > *best || (value == *best && k > best_card)) {
                best = value;
                best_mask = mask;
                best_card = k;
            }
        }
        return true;
    });
    if (!best) return {std::nullopt, std::nullopt};
    return {*best, toughham::detail::mask_to_set(best_mask, verts, n)};
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Graph families and generators with exact attached certificates.
// ---------------------------------------------------------------------------

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

inline Graph cycle_graph(int n) {
    auto e = path_graph(n).edges();
    e.emplace_back(0, n - 1);
    return Graph::from_edges(n, e);
}

// Parts get consecutive id blocks in the given order.
inline Graph complete_multipartite(const std::vector<int>& parts) {
    int n = 0;
    for (int p : parts) n += p;
    std::vector<std::pair<int, int>> e;
    int off_i = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        int off_j = off_i + parts[i];
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            for (int a = 0; a < parts[i]; ++a)
                for (int b = 0; b < parts[j]; ++b) e.emplace_back(off_i + a, off_j + b);
            off_j += parts[j];
        }
        off_i += parts[i];
    }
    return Graph::from_edges(n, e);
}

inline Graph complete_bipartite(int a, int b) { return complete_multipartite({a, b}); }

// K_s joined to a disjoint union of cliques; ids: clique block first... the
// apex clique occupies ids 0..s-1, the parts follow in order.
inline Graph clique_join(int s, const std::vector<int>& parts) {
    Graph h = Graph::edgeless(0);
    for (int p : parts) h = disjoint_union(h, complete_graph(p));
    return join(complete_graph(s), h);
}

struct FamilySpec {
    std::string tag;          // complete | complete-multipartite | clique-join |
                              // random-cograph | clique-join-cograph
    std::vector<int> params;  // family-specific sizes
    std::uint64_t seed = 0;

    std::string to_string() const {
        std::string s = tag + "(";
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(params[i]);
        }
        return s + ";seed=" + std::to_string(seed) + ")";
    }
};

struct GeneratedInstance {
    FamilySpec spec;
    Graph graph;
    std::optional<ToughnessCertificate> toughness;  // exact when present
    bool p4_free = false;
    bool p4_union_p1_free = false;
};

namespace detail_gen {

inline Graph random_cograph(int n, std::mt19937_64& rng) {
    if (n == 1) return Graph::edgeless(1);
    // split into 2..min(n,4) parts, then union or join them
    std::uniform_int_distribution<int> parts_dist(2, std::min(n, 4));
    int parts = parts_dist(rng);
    std::vector<int> sizes(parts, 1);
    for (int extra = n - parts; extra > 0; --extra) {
        std::uniform_int_distribution<int> pick(0, parts - 1);
        sizes[pick(rng)]++;
    }
    bool use_join = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    Graph acc = random_cograph(sizes[0], rng);
    for (int i = 1; i < parts; ++i) {
        Graph part = random_cograph(sizes[i], rng);
        acc = use_join ? join(acc, part) : disjoint_union(acc, part);
    }
    return acc;
}

}  // namespace detail_gen

// Builds the requested family member plus its exact certificates.  For
// K_s v (union of cliques) the toughness s/c comes from the closed form the
// universal-vertex reduction yields; everything else is brute-forced when
// small enough.
inline GeneratedInstance generate(const FamilySpec& spec) {
    GeneratedInstance out;
    out.spec = spec;
    if (spec.tag == "complete") {
        if (spec.params.size() != 1) throw MalformedInput("complete: want n");
        out.graph = complete_graph(spec.params[0]);
        out.toughness = {Rational::infinity(), std::nullopt};
    } else if (spec.tag == "complete-multipartite") {
        if (spec.params.empty()) throw MalformedInput("complete-multipartite: want parts");
        out.graph = complete_multipartite(spec.params);
        out.toughness = toughness(out.graph);
    } else if (spec.tag == "clique-join") {
        if (spec.params.size() < 2) throw MalformedInput("clique-join: want s, parts...");
        int s = spec.params[0];
        std::vector<int> parts(spec.params.begin() + 1, spec.params.end());
        out.graph = clique_join(s, parts);
        if (parts.size() >= 2) {
            // only supersets of the apex clique cut the graph, and removing
            // part vertices never lowers the ratio, so tau = s / #parts
            VertexSet w(out.graph.vertex_count());
            for (int v = 0; v < s; ++v) w.insert(v);
            out.toughness = ToughnessCertificate{Rational(s, int(parts.size())), w};
        } else {
            out.toughness = ToughnessCertificate{Rational::infinity(), std::nullopt};
        }
    } else if (spec.tag == "random-cograph" || spec.tag == "clique-join-cograph") {
        if (spec.params.empty()) throw MalformedInput(spec.tag + ": want n");
        std::mt19937_64 rng(spec.seed);
        if (spec.tag == "random-cograph") {
            out.graph = detail_gen::random_cograph(spec.params[0], rng);
        } else {
            if (spec.params.size() != 2)
                throw MalformedInput("clique-join-cograph: want s, n");
            out.graph = join(complete_graph(spec.params[0]),
                             detail_gen::random_cograph(spec.params[1], rng));
        }
        int reduced = out.graph.vertex_count() -
                      toughham::detail::universal_vertices(out.graph).count();
        if (reduced <= config().enumeration_cap) out.toughness = toughness(out.graph);
    } else {
        throw MalformedInput("unknown family tag: " + spec.tag);
    }
    out.p4_free = is_p4_free(out.graph);
    out.p4_union_p1_free = out.p4_free || is_p4_union_p1_free(out.graph);
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of unlabeled cographs via canonical cotrees.
// ---------------------------------------------------------------------------

namespace detail_enum {

// All multisets of positive integers summing to n with at least two parts,
// parts non-increasing.
inline std::vector<std::vector<int>> partitions_at_least_two(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int cap) -> void {
        if (rest == 0) {
            if (cur.size() >= 2) out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, cap); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Canonical codes of rooted cotrees on k leaves whose root has the given
// kind ("u" or "j"); a single leaf is "x".  Children of a node are the other
// kind or leaves, sorted, so every unlabeled cograph appears exactly once.
inline std::vector<std::string> shapes(int k, char kind);

inline std::vector<std::string> child_shapes(int k, char parent_kind) {
    if (k == 1) return {"x"};
    return shapes(k, parent_kind == 'u' ? 'j' : 'u');
}

inline std::vector<std::string> shapes(int k, char kind) {
    std::vector<std::string> out;
    for (const auto& parts : partitions_at_least_two(k)) {
        // choices per part, then all sorted multisets across equal parts
        std::vector<std::vector<std::string>> options;
        for (int p : parts) options.push_back(child_shapes(p, kind));
        std::vector<std::string> chosen(parts.size());
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == parts.size()) {
                out.push_back(std::string(1, kind) + "(");
                for (auto& c : chosen) out.back() += c + ",";
                out.back() += ")";
                return;
            }
            for (const auto& opt : options[i]) {
                // keep multisets of equal-size siblings non-decreasing
                if (i > 0 && parts[i] == parts[i - 1] && opt < chosen[i - 1]) continue;
                chosen[i] = opt;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

inline Graph graph_from_code(const std::string& code) {
    // parse the nested code into a graph bottom-up
    std::size_t pos = 0;
    auto rec = [&](auto&& self) -> Graph {
        if (code[pos] == 'x') {
            ++pos;
            return Graph::edgeless(1);
        }
        char kind = code[pos];
        pos += 2;  // kind and '('
        std::vector<Graph> children;
        while (code[pos] != ')') {
            children.push_back(self(self));
            ++pos;  // ','
        }
        ++pos;  // ')'
        Graph acc = children[0];
        for (std::size_t i = 1; i < children.size(); ++i)
            acc = kind == 'u' ? disjoint_union(acc, children[i]) : join(acc, children[i]);
        return acc;
    };
    return rec(rec);
}

}  // namespace detail_enum

// All unlabeled cographs on n vertices, exactly once each.
inline std::vector<Graph> enumerate_cographs(int n) {
    if (n < 1 || n > 8) throw InstanceTooLarge("enumerate_cographs: n must be in [1,8]");
    std::vector<Graph> out;
    if (n == 1) {
        out.push_back(Graph::edgeless(1));
        return out;
    }
    for (char kind : {'u', 'j'})
        for (const auto& code : detail_enum::shapes(n, kind))
            out.push_back(detail_enum::graph_from_code(code));
    return out;
}

}  // namespace toughham
