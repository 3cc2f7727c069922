#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "toughham/errors.hpp"
#include "toughham/graph.hpp"
#include "toughham/rational.hpp"

namespace toughham {

struct CycleSearchResult {
    std::optional<Cycle> cycle;
    bool exhausted = false;  // budget ran out before the search space did

    bool infeasible() const { return !cycle && !exhausted; }
};

namespace detail_cs {

// forced adjacencies per vertex from a set of mandatory edges
inline std::vector<std::vector<int>> forced_map(int n,
                                                const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> forced(n);
    for (auto [u, v] : edges) {
        forced[u].push_back(v);
        forced[v].push_back(u);
    }
    for (auto& f : forced) {
        std::sort(f.begin(), f.end());
        if (f.size() > 2)
            throw MalformedInput("mandatory edges exceed degree two at a vertex");
    }
    return forced;
}

}  // namespace detail_cs

// Any cycle containing every edge of `mandatory` (independent edges), by
// exhaustive backtracking under a node budget.  Candidates are explored in
// ascending order; at a vertex with an unused mandatory edge that edge is
// the only continuation.
inline CycleSearchResult cycle_through_edges(const Graph& g,
                                             const std::vector<std::pair<int, int>>& mandatory,
                                             long long budget_override = -1) {
    int n = g.vertex_count();
    long long budget = budget_override > 0 ? budget_override : config().cycle_node_budget;
    for (std::size_t i = 0; i < mandatory.size(); ++i)
        for (std::size_t j = i + 1; j < mandatory.size(); ++j) {
            auto [a, b] = mandatory[i];
            auto [c, d] = mandatory[j];
            if (a == c || a == d || b == c || b == d)
                throw MalformedInput("cycle_through_edges: edges share an endpoint");
        }
    for (auto [u, v] : mandatory)
        if (!g.adjacent(u, v)) throw MalformedInput("cycle_through_edges: edge absent");

    auto forced = detail_cs::forced_map(n, mandatory);
    int needed = int(mandatory.size());
    std::vector<int> starts;
    if (needed)
        starts.push_back(std::min(mandatory[0].first, mandatory[0].second));
    else
        for (int v = 0; v < n; ++v) starts.push_back(v);  // a cycle may avoid any vertex

    auto edge_index = [&](int u, int v) {
        for (std::size_t i = 0; i < mandatory.size(); ++i) {
            auto [a, b] = mandatory[i];
            if ((a == u && b == v) || (a == v && b == u)) return int(i);
        }
        return -1;
    };

    bool out_of_budget = false;
    for (int start : starts) {
        std::vector<int> path{start};
        VertexSet on_path(n);
        on_path.insert(start);
        std::vector<char> edge_used(mandatory.size(), 0);
        int used_count = 0;
        auto rec = [&](auto&& self, int cur, int prev) -> bool {
            if (--budget < 0) {
                out_of_budget = true;
                return false;
            }
            if (path.size() >= 3 && used_count == needed && g.adjacent(cur, start))
                return true;
            // an unused mandatory edge at cur is the only way onward
            std::vector<int> cands;
            for (int f : forced[cur]) {
                int idx = edge_index(cur, f);
                if (!edge_used[idx]) cands.push_back(f);
            }
            if (cands.empty())
                g.neighbors(cur).for_each([&](int v) { cands.push_back(v); });
            for (int next : cands) {
                if (next == prev || on_path.contains(next)) continue;
                int idx = edge_index(cur, next);
                if (idx >= 0 && edge_used[idx]) continue;
                // entering a vertex with two pending mandatory edges through a
                // third edge can never close
                int pending = 0;
                for (int f : forced[next]) {
                    if (!edge_used[edge_index(next, f)] && f != cur) ++pending;
                }
                if (pending >= 2) continue;
                path.push_back(next);
                on_path.insert(next);
                if (idx >= 0) {
                    edge_used[idx] = 1;
                    ++used_count;
                }
                if (self(self, next, cur)) return true;
                if (idx >= 0) {
                    edge_used[idx] = 0;
                    --used_count;
                }
                on_path.erase(next);
                path.pop_back();
                if (out_of_budget) return false;
            }
            return false;
        };
        if (rec(rec, start, -1)) return {Cycle(path), false};
        if (out_of_budget) return {std::nullopt, true};
    }
    return {std::nullopt, false};
}

// Hamiltonian cycle containing a linear forest, exhaustive with forced-edge
// propagation, fewest-continuations-first ordering and a connectivity prune.
inline CycleSearchResult ham_cycle_through_forest(const Graph& g,
                                                  const std::vector<std::pair<int, int>>& forest,
                                                  long long budget_override = -1) {
    int n = g.vertex_count();
    if (n < 3) return {std::nullopt, false};
    long long budget = budget_override > 0 ? budget_override : config().cycle_node_budget;
    auto forced = detail_cs::forced_map(n, forest);
    {
        // a linear forest: no vertex above degree two and no cycles
        Graph check = Graph::from_edges(n, forest);
        VertexSet fverts(n);
        for (auto [u, v] : forest) {
            fverts.insert(u);
            fverts.insert(v);
        }
        long long edge_total = 0;
        for (const auto& c : components(check, VertexSet(n)))
            if (c.count() >= 2) edge_total += c.count() - 1;
        if (edge_total != (long long)forest.size())
            throw MalformedInput("ham_cycle_through_forest: not a linear forest");
    }

    std::vector<std::pair<int, int>> mand = forest;
    auto edge_index = [&](int u, int v) {
        for (std::size_t i = 0; i < mand.size(); ++i) {
            auto [a, b] = mand[i];
            if ((a == u && b == v) || (a == v && b == u)) return int(i);
        }
        return -1;
    };

    int start = 0;
    std::vector<int> path{start};
    VertexSet visited(n);
    visited.insert(start);
    std::vector<char> edge_used(mand.size(), 0);
    int used_count = 0, needed = int(mand.size());
    bool out_of_budget = false;

    auto remaining_ok = [&](int cur) {
        // every unvisited vertex keeps two usable attachment points, and the
        // unvisited region stays connected through the current endpoint
        VertexSet open = VertexSet::full(n) - visited;
        if (!open.any()) return true;
        bool ok = true;
        open.for_each([&](int v) {
            if (!ok) return;
            VertexSet avail = g.neighbors(v) & open;
            int extra = (g.adjacent(v, cur) ? 1 : 0) + (g.adjacent(v, start) ? 1 : 0);
            if (avail.count() + extra < 2) ok = false;
        });
        if (!ok) return false;
        VertexSet reach(n);
        VertexSet frontier = g.neighbors(cur) & open;
        reach |= frontier;
        while (frontier.any()) {
            VertexSet next(n);
            frontier.for_each([&](int v) { next |= g.neighbors(v); });
            next &= open;
            next -= reach;
            reach |= next;
            frontier = next;
        }
        return reach == open;
    };

    auto rec = [&](auto&& self, int cur, int prev) -> bool {
        if (--budget < 0) {
            out_of_budget = true;
            return false;
        }
        if (int(path.size()) == n) {
            if (used_count != needed) return false;
            return g.adjacent(cur, start);
        }
        std::vector<int> cands;
        for (int f : forced[cur]) {
            int idx = edge_index(cur, f);
            if (!edge_used[idx]) cands.push_back(f);
        }
        if (cands.empty()) {
            g.neighbors(cur).for_each([&](int v) {
                if (!visited.contains(v)) cands.push_back(v);
            });
            // fewest continuations first
            std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
                return degree_in(g, a, VertexSet::full(n) - visited) <
                       degree_in(g, b, VertexSet::full(n) - visited);
            });
        }
        for (int next : cands) {
            if (next == prev || visited.contains(next)) continue;
            int pending = 0;
            for (int f : forced[next]) {
                int fi = edge_index(next, f);
                if (!edge_used[fi] && f != cur) ++pending;
            }
            int idx = edge_index(cur, next);
            if (pending >= 2) continue;
            path.push_back(next);
            visited.insert(next);
            if (idx >= 0) {
                edge_used[idx] = 1;
                ++used_count;
            }
            if (remaining_ok(next) && self(self, next, cur)) return true;
            if (idx >= 0) {
                edge_used[idx] = 0;
                --used_count;
            }
            visited.erase(next);
            path.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    };

    if (rec(rec, start, -1)) return {Cycle(path), false};
    if (out_of_budget) return {std::nullopt, true};
    return {std::nullopt, false};
}

// ---------------------------------------------------------------------------
// Vertex connectivity by unit-capacity flow on the split digraph.
// ---------------------------------------------------------------------------

namespace detail_cs {

struct FlowNet {
    struct Edge {
        int to, rev, cap;
    };
    std::vector<std::vector<Edge>> adj;

    explicit FlowNet(int n) : adj(n) {}

    void add(int u, int v, int cap) {
        adj[u].push_back({v, int(adj[v].size()), cap});
        adj[v].push_back({u, int(adj[u].size()) - 1, 0});
    }

    int bfs_augment(int s, int t) {
        std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
        std::vector<int> queue{s};
        parent[s] = {s, 0};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (std::size_t ei = 0; ei < adj[u].size(); ++ei) {
                const auto& e = adj[u][ei];
                if (e.cap <= 0 || parent[e.to].first != -1) continue;
                parent[e.to] = {u, int(ei)};
                if (e.to == t) {
                    int cur = t;
                    while (cur != s) {
                        auto [pu, pei] = parent[cur];
                        adj[pu][pei].cap -= 1;
                        adj[cur][adj[pu][pei].rev].cap += 1;
                        cur = pu;
                    }
                    return 1;
                }
                queue.push_back(e.to);
            }
        }
        return 0;
    }

    int max_flow(int s, int t, int stop_at) {
        int total = 0;
        while (total < stop_at && bfs_augment(s, t)) ++total;
        return total;
    }
};

// minimum s-t vertex cut avoiding s and t themselves
inline std::pair<int, VertexSet> vertex_cut_between(const Graph& g, int s, int t, int cap) {
    int n = g.vertex_count();
    FlowNet net(2 * n);
    for (int v = 0; v < n; ++v) net.add(v, v + n, v == s || v == t ? 2 * n : 1);
    for (auto [u, v] : g.edges()) {
        net.add(u + n, v, 2 * n);
        net.add(v + n, u, 2 * n);
    }
    int flow = net.max_flow(s + n, t, cap);
    // saturated internal edges on the residual boundary form the cut
    VertexSet cut(n);
    std::vector<char> seen(2 * n, 0);
    std::vector<int> queue{s + n};
    seen[s + n] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (const auto& e : net.adj[queue[qi]])
            if (e.cap > 0 && !seen[e.to]) {
                seen[e.to] = 1;
                queue.push_back(e.to);
            }
    for (int v = 0; v < n; ++v)
        if (seen[v] && !seen[v + n]) cut.insert(v);
    return {flow, cut};
}

}  // namespace detail_cs

struct ConnectivityCut {
    int connectivity = 0;
    std::optional<VertexSet> cut;  // absent for complete graphs
};

// Global vertex connectivity with a witnessing minimum cut, capped: once
// every inspected pair carries at least `cap` internally disjoint paths the
// exact value above is irrelevant and `cap` is reported.
inline ConnectivityCut vertex_connectivity(const Graph& g, int cap) {
    int n = g.vertex_count();
    if (g.is_complete()) return {n - 1, std::nullopt};
    int s0 = 0;
    for (int v = 1; v < n; ++v)
        if (g.degree(v) < g.degree(s0)) s0 = v;
    int best = cap;
    std::optional<VertexSet> best_cut;
    auto probe = [&](int a, int b) {
        if (a == b || g.adjacent(a, b)) return;
        auto [flow, cut] = detail_cs::vertex_cut_between(g, a, b, best + 1);
        if (flow <= best && flow < cap + 1 && (!best_cut || flow < best)) {
            best = flow;
            best_cut = cut;
        }
    };
    for (int v = 0; v < n; ++v) probe(s0, v);
    for (int w = g.neighbors(s0).first(); w != -1; w = g.neighbors(s0).next_after(w))
        for (int v = 0; v < n; ++v) probe(w, v);
    if (best >= cap) return {cap, std::nullopt};
    return {best, best_cut};
}

// Independence number by branch and bound; nullopt when the budget runs out.
inline std::optional<int> independence_number(const Graph& g, long long budget = 2'000'000) {
    int n = g.vertex_count();
    int best = 0;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) > g.degree(b); });
    bool out = false;
    auto rec = [&](auto&& self, VertexSet cand, int size) -> void {
        if (out) return;
        if (--budget < 0) {
            out = true;
            return;
        }
        if (size > best) best = size;
        if (size + cand.count() <= best) return;
        for (int v : order) {
            if (!cand.contains(v)) continue;
            if (size + cand.count() <= best) return;
            VertexSet next = cand - g.neighbors(v);
            next.erase(v);
            self(self, next, size + 1);
            cand.erase(v);
        }
    };
    rec(rec, VertexSet::full(n), 0);
    if (out) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// Cycle extension by absorbing a connected piece hanging off the cycle.
// ---------------------------------------------------------------------------

// Extends c through the component h: either two cycle-neighbors of h sit
// consecutively on c, or two successors of such neighbors are adjacent.  If
// neither happens the successors plus a piece vertex form an independent set
// defeating t-toughness, reported as the violation.
inline Cycle extend_cycle_insert(const Graph& g, const Cycle& c, const VertexSet& h,
                                 const Rational& t) {
    int n = g.vertex_count();
    if (!h.any()) throw MalformedInput("extend_cycle_insert: empty piece");
    VertexSet cset = c.vertex_set(n);
    if (cset.intersects(h)) throw MalformedInput("extend_cycle_insert: piece meets the cycle");
    {
        auto sub = induced(g, h);
        if (!is_connected(sub.graph))
            throw MalformedInput("extend_cycle_insert: piece not connected");
    }
    VertexSet attach = neighborhood_of_set(g, h) & cset;
    Rational threshold = Rational(n) / (t + Rational(1)) - Rational(1);
    if (!(Rational(attach.count()) > threshold))
        throw MalformedInput("extend_cycle_insert: attachment threshold unmet");

    int len = c.length();
    std::vector<int> hits;  // cycle positions adjacent to h
    for (int i = 0; i < len; ++i)
        if (attach.contains(c.vertices[i])) hits.push_back(i);

    auto h_path = [&](int from_cycle, int to_cycle) {
        // path inside h from a neighbor of from_cycle to a neighbor of to_cycle
        VertexSet starts = neighbors_in(g, from_cycle, h);
        VertexSet goals = neighbors_in(g, to_cycle, h);
        int s = starts.first();
        std::vector<int> parent(n, -1);
        std::vector<int> queue{s};
        parent[s] = s;
        int goal = goals.contains(s) ? s : -1;
        for (std::size_t qi = 0; qi < queue.size() && goal == -1; ++qi) {
            int u = queue[qi];
            VertexSet nb = g.neighbors(u) & h;
            for (int v = nb.first(); v != -1; v = nb.next_after(v)) {
                if (parent[v] != -1) continue;
                parent[v] = u;
                if (goals.contains(v)) {
                    goal = v;
                    break;
                }
                queue.push_back(v);
            }
        }
        if (goal == -1) raise_structure("extend: piece path between attachments missing");
        std::vector<int> rev;
        for (int cur = goal; cur != s; cur = parent[cur]) rev.push_back(cur);
        rev.push_back(s);
        std::reverse(rev.begin(), rev.end());
        return rev;
    };

    // consecutive attachment points on the cycle
    for (std::size_t a = 0; a < hits.size(); ++a) {
        int i = hits[a];
        int j = (i + 1) % len;
        if (!attach.contains(c.vertices[j])) continue;
        auto inner = h_path(c.vertices[i], c.vertices[j]);
        std::vector<int> out;
        for (int p = j; p != i; p = (p + 1) % len) out.push_back(c.vertices[p]);
        out.push_back(c.vertices[i]);
        out.insert(out.end(), inner.begin(), inner.end());
        Cycle res(out);
        if (!res.verify(g)) raise_structure("extend: consecutive splice failed");
        return res;
    }

    // adjacent successors
    for (std::size_t a = 0; a < hits.size(); ++a)
        for (std::size_t b = a + 1; b < hits.size(); ++b) {
            int i = hits[a], j = hits[b];
            int si = (i + 1) % len, sj = (j + 1) % len;
            if (!g.adjacent(c.vertices[si], c.vertices[sj])) continue;
            auto inner = h_path(c.vertices[i], c.vertices[j]);
            std::vector<int> out;
            for (int p = sj; p != (i + 1) % len; p = (p + 1) % len) out.push_back(c.vertices[p]);
            // now at v_i; walk the piece, then back from v_j to v_i^+
            out.insert(out.end(), inner.begin(), inner.end());
            for (int p = j; p != i; p = (p - 1 + len) % len) out.push_back(c.vertices[p]);
            Cycle res(out);
            if (!res.verify(g)) raise_structure("extend: crossing splice failed");
            return res;
        }

    // no extension: successors plus a piece vertex are independent
    VertexSet w(n);
    w.insert(h.first());
    for (int i : hits) w.insert(c.vertices[(i + 1) % len]);
    bool independent = true;
    w.for_each([&](int u) {
        if (neighbors_in(g, u, w).any()) independent = false;
    });
    if (!independent) raise_structure("extend: successor set unexpectedly dependent");
    HypothesisViolation v;
    v.kind = ViolationKind::ToughnessWrt;
    v.claim = "independent successor set defeats the toughness bound";
    v.witness_set = w;
    v.ratio = Rational(n - w.count(), w.count());
    throw HypothesisError(std::move(v));
}

}  // namespace toughham
