#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "toughham/connectivity.hpp"
#include "toughham/graph.hpp"

namespace toughham {

// ---------------------------------------------------------------------------
// Bipartite maximum matching and minimum vertex cover (Koenig construction).
// Only edges between `left` and `right` are considered.
// ---------------------------------------------------------------------------

struct BipartiteMatching {
    std::vector<std::pair<int, int>> edges;  // (left vertex, right vertex)
};

namespace detail_m {

struct Hungarian {
    std::vector<int> left, right;
    std::vector<std::vector<int>> adj;  // left index -> right indices
    std::vector<int> match_l, match_r;  // partner indices, -1 when free

    Hungarian(const Graph& g, const VertexSet& l, const VertexSet& r)
        : left(l.to_vector()), right(r.to_vector()) {
        adj.resize(left.size());
        match_l.assign(left.size(), -1);
        match_r.assign(right.size(), -1);
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
                if (g.adjacent(left[i], right[j])) adj[i].push_back(int(j));
    }

    bool augment(int i, std::vector<char>& seen) {
        for (int j : adj[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (match_r[j] == -1 || augment(match_r[j], seen)) {
                match_l[i] = j;
                match_r[j] = i;
                return true;
            }
        }
        return false;
    }

    int solve() {
        int size = 0;
        for (std::size_t i = 0; i < left.size(); ++i) {
            std::vector<char> seen(right.size(), 0);
            if (augment(int(i), seen)) ++size;
        }
        return size;
    }

    // alternating reachability from the unmatched left vertices
    void reach(std::vector<char>& zl, std::vector<char>& zr) const {
        zl.assign(left.size(), 0);
        zr.assign(right.size(), 0);
        std::vector<int> stack;
        for (std::size_t i = 0; i < left.size(); ++i)
            if (match_l[i] == -1) {
                zl[i] = 1;
                stack.push_back(int(i));
            }
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j : adj[i]) {
                if (zr[j] || match_l[i] == j) continue;
                zr[j] = 1;
                int k = match_r[j];
                if (k != -1 && !zl[k]) {
                    zl[k] = 1;
                    stack.push_back(k);
                }
            }
        }
    }
};

}  // namespace detail_m

inline BipartiteMatching max_bipartite_matching(const Graph& g, const VertexSet& left,
                                                const VertexSet& right) {
    if (left.intersects(right))
        throw MalformedInput("max_bipartite_matching: sides not disjoint");
    detail_m::Hungarian h(g, left, right);
    h.solve();
    BipartiteMatching m;
    for (std::size_t i = 0; i < h.left.size(); ++i)
        if (h.match_l[i] != -1) m.edges.emplace_back(h.left[i], h.right[h.match_l[i]]);
    return m;
}

inline VertexSet min_vertex_cover(const Graph& g, const VertexSet& left,
                                  const VertexSet& right) {
    if (left.intersects(right))
        throw MalformedInput("min_vertex_cover: sides not disjoint");
    detail_m::Hungarian h(g, left, right);
    h.solve();
    std::vector<char> zl, zr;
    h.reach(zl, zr);
    VertexSet cover(g.vertex_count());
    for (std::size_t i = 0; i < h.left.size(); ++i)
        if (!zl[i]) cover.insert(h.left[i]);
    for (std::size_t j = 0; j < h.right.size(); ++j)
        if (zr[j]) cover.insert(h.right[j]);
    return cover;
}

// ---------------------------------------------------------------------------
// Good star-matchings between a component of g - s and its neighbors in s.
// ---------------------------------------------------------------------------

struct Star {
    int center;               // vertex of the component
    std::vector<int> leaves;  // vertices of s, ascending
};

struct StarMatching {
    std::vector<Star> stars;  // vertex-disjoint, centers on the component side

    int edge_count() const {
        int total = 0;
        for (const auto& st : stars) total += int(st.leaves.size());
        return total;
    }

    VertexSet covered_centers(int universe) const {
        VertexSet out(universe);
        for (const auto& st : stars) out.insert(st.center);
        return out;
    }

    VertexSet covered_leaves(int universe) const {
        VertexSet out(universe);
        for (const auto& st : stars)
            for (int l : st.leaves) out.insert(l);
        return out;
    }
};

struct GoodMatchingCertificate {
    StarMatching matching;
    int r = 0;
    VertexSet component;               // the D side
    VertexSet s_side;                  // N(D) in s that was usable
    std::optional<VertexSet> cutset_w;  // scattering witness of D when s(D) >= 0
    bool furthermore = false;           // the degenerate balanced cutset shape
};

// Witness that no good star-matching exists against the usable s-vertices:
// removing `blocker` separates the rest of the component from them.
struct MatchingObstruction {
    VertexSet blocker;

    bool verify(const Graph& g, const VertexSet& component, const VertexSet& usable) const {
        VertexSet d_rest = component - blocker;
        if (!d_rest.any()) return false;
        VertexSet s_rest = usable - blocker;
        bool clean = true;
        d_rest.for_each([&](int v) {
            if (g.neighbors(v).intersects(s_rest)) clean = false;
        });
        return clean;
    }
};

// (M1)-(M3) checked literally from the graph.  For components smaller than r
// the outside-W quota caps at what is coverable at all.
inline std::optional<std::string> validate_good_star_matching(
    const Graph& g, const GoodMatchingCertificate& cert) {
    int n = g.vertex_count();
    const auto& m = cert.matching;
    VertexSet centers(n), leaves(n);
    for (const auto& st : m.stars) {
        if (st.leaves.empty()) return "empty star";
        if (!cert.component.contains(st.center)) return "center outside the component";
        if (centers.contains(st.center)) return "duplicate center";
        centers.insert(st.center);
        for (int l : st.leaves) {
            if (!cert.s_side.contains(l)) return "leaf outside the s-side";
            if (leaves.contains(l) || centers.contains(l)) return "leaf reused";
            leaves.insert(l);
            if (!g.adjacent(st.center, l)) return "star edge missing in the graph";
        }
    }
    if (m.edge_count() != cert.r) return "edge count differs from r";  // (M1)

    int d_size = cert.component.count();
    if (d_size >= cert.r) {  // (M2) matching shape
        for (const auto& st : m.stars)
            if (st.leaves.size() != 1) return "expected a plain matching";
    } else {
        if (int(m.stars.size()) != d_size) return "star per component vertex expected";
        int small = cert.r / d_size, big = (cert.r + d_size - 1) / d_size;
        int bigs = 0;
        for (const auto& st : m.stars) {
            int sz = int(st.leaves.size());
            if (sz != small && sz != big) return "star size out of range";
            if (sz == big && big != small) ++bigs;
        }
        if (big != small && bigs != cert.r % d_size) return "wrong big star count";
    }

    if (cert.cutset_w) {  // (M3)
        const VertexSet& w = *cert.cutset_w;
        int c = component_count(g, (VertexSet::full(n) - cert.component) | w);
        if (c < w.count()) return "stored cutset misses c(D-W) >= |W|";
        int outside_quota = std::min(cert.r / 2, (cert.component - w).count());
        if ((centers - w).count() < outside_quota) return "too few covered outside W";
        if (cert.furthermore && !(centers & w).any()) return "no covered vertex inside W";
    }
    return std::nullopt;
}

namespace detail_m {

// choose the scattering witness of the component as the (M3) cutset
inline std::optional<VertexSet> component_cutset(const Graph& g, const VertexSet& d) {
    auto sc = scattering_within(g, d);
    if (sc.value && *sc.value >= 0) return sc.witness;
    return std::nullopt;
}

inline bool furthermore_shape(const Graph& g, const VertexSet& d, const VertexSet& w) {
    auto comps = components(g, (VertexSet::full(g.vertex_count()) - d) | w);
    if (int(comps.size()) != w.count()) return false;
    for (const auto& c : comps)
        if (c.count() != 1) return false;
    bool independent = true;
    w.for_each([&](int v) {
        if (neighbors_in(g, v, w).any()) independent = false;
    });
    return independent;
}

// Matching drawn from the alternating components of a union of two
// matchings, saturating every s-side vertex of `a` and every center of `b`.
// Components are paths or cycles; for a path whose end edges come from
// different matchings, the two endpoints share a side (even edge count), so
// keeping `a` on s-side-ended paths and `b` on the others loses nothing
// required.
inline std::vector<std::pair<int, int>> saturate_union(
    const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b,
    int n, const VertexSet& s_side) {
    std::vector<int> mate_a(n, -1), mate_b(n, -1);
    for (auto [c, l] : a) {
        mate_a[c] = l;
        mate_a[l] = c;
    }
    for (auto [c, l] : b) {
        mate_b[c] = l;
        mate_b[l] = c;
    }
    auto deg = [&](int v) { return (mate_a[v] != -1) + (mate_b[v] != -1); };
    std::vector<char> vis(n, 0);
    std::vector<std::pair<int, int>> out;

    auto emit = [&](const std::vector<int>& comp, bool use_a) {
        for (std::size_t i = 0; i + 1 < comp.size(); ++i) {
            int x = comp[i], y = comp[i + 1];
            if ((use_a && mate_a[x] == y) || (!use_a && mate_b[x] == y))
                out.emplace_back(x, y);
        }
    };

    // path components first, walked from an endpoint
    for (int v = 0; v < n; ++v) {
        if (vis[v] || deg(v) != 1) continue;
        std::vector<int> comp{v};
        vis[v] = 1;
        bool via_a = mate_a[v] != -1;
        bool first_edge_a = via_a;
        int cur = v;
        while (true) {
            int nxt = via_a ? mate_a[cur] : mate_b[cur];
            if (nxt == -1 || vis[nxt]) break;
            comp.push_back(nxt);
            vis[nxt] = 1;
            cur = nxt;
            via_a = !via_a;
        }
        bool last_edge_a = !via_a;  // the flip happened after the final edge
        bool use_a;
        if (first_edge_a == last_edge_a)
            use_a = first_edge_a;
        else
            use_a = s_side.contains(comp.front());
        emit(comp, use_a);
    }
    // cycles: both matchings saturate everything, keep the first
    for (int v = 0; v < n; ++v) {
        if (vis[v] || deg(v) == 0) continue;
        std::vector<int> comp{v};
        vis[v] = 1;
        bool via_a = true;
        int cur = v;
        while (true) {
            int nxt = via_a ? mate_a[cur] : mate_b[cur];
            if (nxt == -1 || vis[nxt]) break;
            comp.push_back(nxt);
            vis[nxt] = 1;
            cur = nxt;
            via_a = !via_a;
        }
        comp.push_back(v);  // close so the last a-edge is emitted
        emit(comp, true);
    }
    return out;
}

}  // namespace detail_m

// Builds a good star-matching of the bipartite graph between component d and
// its usable neighbors inside s, or the separation witness when none exists.
// `allowed` restricts the usable s-vertices (the generalized search feeds
// shrinking pools through here); require_vertex forces one covered s-vertex.
inline std::variant<GoodMatchingCertificate, MatchingObstruction> good_star_matching(
    const Graph& g, const VertexSet& s, const VertexSet& d, int r,
    std::optional<int> require_vertex = std::nullopt,
    std::optional<VertexSet> allowed = std::nullopt) {
    int n = g.vertex_count();
    {
        auto comps = components(g, s);
        bool found = false;
        for (const auto& c : comps)
            if (c == d) found = true;
        if (!found) throw MalformedInput("good_star_matching: d is not a component of g - s");
    }
    if (r < 1) throw MalformedInput("good_star_matching: r must be positive");

    VertexSet usable = neighborhood_of_set(g, d) & s;
    if (allowed) usable &= *allowed;
    if (require_vertex && !usable.contains(*require_vertex))
        throw MalformedInput("good_star_matching: required vertex not usable");

    int d_size = d.count();
    auto w_opt = detail_m::component_cutset(g, d);
    bool furthermore = w_opt && detail_m::furthermore_shape(g, d, *w_opt);

    auto finish = [&](StarMatching m) -> std::variant<GoodMatchingCertificate, MatchingObstruction> {
        // cover the required vertex by a swap that keeps (M2)/(M3) intact
        if (require_vertex && !m.covered_leaves(n).contains(*require_vertex)) {
            int x = *require_vertex;
            bool done = false;
            VertexSet centers = m.covered_centers(n);
            for (auto& st : m.stars) {
                if (done || !g.adjacent(x, st.center)) continue;
                auto drop = std::max_element(st.leaves.begin(), st.leaves.end());
                st.leaves.erase(drop);
                st.leaves.push_back(x);
                std::sort(st.leaves.begin(), st.leaves.end());
                done = true;
            }
            if (!done) {
                // x only reaches uncovered component vertices
                VertexSet reach = neighbors_in(g, x, d) - centers;
                int y = reach.first();
                if (y == -1) raise_structure("good_star_matching: required vertex unreachable");
                std::size_t victim = m.stars.size();
                for (std::size_t i = 0; i < m.stars.size(); ++i) {
                    int u = m.stars[i].center;
                    bool same_side = !w_opt || (w_opt->contains(u) == w_opt->contains(y));
                    if (same_side) {
                        victim = i;
                        break;
                    }
                }
                if (victim == m.stars.size())
                    raise_structure("good_star_matching: no swappable edge for the required vertex");
                m.stars.erase(m.stars.begin() + victim);
                m.stars.push_back({y, {x}});
            }
        }
        GoodMatchingCertificate cert;
        cert.matching = std::move(m);
        cert.r = r;
        cert.component = d;
        cert.s_side = usable;
        cert.cutset_w = w_opt;
        cert.furthermore = furthermore;
        if (auto err = validate_good_star_matching(g, cert))
            raise_structure("good_star_matching: built certificate invalid: " + *err);
        return cert;
    };

    if (d_size >= r) {
        detail_m::Hungarian h(g, d, usable);
        int msize = h.solve();
        if (msize < std::min(d_size, r))
            return MatchingObstruction{min_vertex_cover(g, d, usable)};

        std::vector<std::pair<int, int>> base;  // (center, leaf)
        for (std::size_t i = 0; i < h.left.size(); ++i)
            if (h.match_l[i] != -1) base.emplace_back(h.left[i], h.right[h.match_l[i]]);

        if (w_opt) {
            const VertexSet& w = *w_opt;
            VertexSet outside = d - w;
            int need_outside = std::min(r / 2, outside.count());
            int have_outside = 0;
            for (auto [c, l] : base)
                if (outside.contains(c)) ++have_outside;
            if (have_outside < need_outside) {
                // rebalance through a matching that avoids W entirely
                detail_m::Hungarian h2(g, outside, usable);
                int m2 = h2.solve();
                if (m2 < need_outside) {
                    VertexSet q = min_vertex_cover(g, outside, usable);
                    return MatchingObstruction{q | w};
                }
                std::vector<std::pair<int, int>> mstar;
                for (std::size_t i = 0; i < h2.left.size(); ++i)
                    if (h2.match_l[i] != -1)
                        mstar.emplace_back(h2.left[i], h2.right[h2.match_l[i]]);
                mstar.resize(std::min<std::size_t>(mstar.size(), std::size_t(need_outside)));
                base = detail_m::saturate_union(base, mstar, n, usable);
            }
            // trim to exactly r, preferring centers outside W
            std::stable_sort(base.begin(), base.end(), [&](auto& e1, auto& e2) {
                return outside.contains(e1.first) > outside.contains(e2.first);
            });
            if (int(base.size()) > r) base.resize(r);

            if (furthermore) {
                bool touches_w = false;
                for (auto [c, l] : base)
                    if (w.contains(c)) touches_w = true;
                if (!touches_w) {
                    detail_m::Hungarian hw(g, w, usable);
                    int mw = hw.solve();
                    if (mw < r / 2) {
                        VertexSet q = min_vertex_cover(g, w, usable);
                        return MatchingObstruction{q | outside};
                    }
                    std::vector<std::pair<int, int>> wedges;
                    for (std::size_t i = 0; i < hw.left.size(); ++i)
                        if (hw.match_l[i] != -1)
                            wedges.emplace_back(hw.left[i], hw.right[hw.match_l[i]]);
                    wedges.resize(std::size_t(std::max(1, r / 2)));
                    VertexSet used(n);
                    for (auto [c, l] : wedges) {
                        used.insert(c);
                        used.insert(l);
                    }
                    std::vector<std::pair<int, int>> mixed = wedges;
                    for (auto [c, l] : base) {
                        if (int(mixed.size()) == r) break;
                        if (used.contains(c) || used.contains(l)) continue;
                        mixed.emplace_back(c, l);
                        used.insert(c);
                        used.insert(l);
                    }
                    if (int(mixed.size()) < r)
                        raise_structure("good_star_matching: balanced exchange fell short");
                    base = mixed;
                }
            }
        } else if (int(base.size()) > r) {
            base.resize(r);
        }

        std::sort(base.begin(), base.end());
        StarMatching m;
        for (auto [c, l] : base) m.stars.push_back({c, {l}});
        return finish(std::move(m));
    }

    // Star regime: every component vertex becomes a center with floor(r/|D|)
    // or ceil(r/|D|) leaves.  Copies of the vertices stand in for the star
    // slots: the floor loads are matched first, then the leftover units are
    // augmented in one at a time, which reroutes earlier choices but never
    // drops a vertex below its floor.
    int small = r / d_size, p = r % d_size;
    std::vector<int> dverts = d.to_vector();
    std::vector<int> owner;      // copy index -> component vertex
    std::vector<int> bonus_of;   // vertex index -> its bonus copy, or -1
    for (std::size_t i = 0; i < dverts.size(); ++i)
        for (int c = 0; c < small; ++c) owner.push_back(dverts[i]);
    bonus_of.assign(dverts.size(), -1);
    if (p > 0)
        for (std::size_t i = 0; i < dverts.size(); ++i) {
            bonus_of[i] = int(owner.size());
            owner.push_back(dverts[i]);
        }
    std::vector<int> sverts = usable.to_vector();
    std::vector<std::vector<int>> adj(owner.size());
    for (std::size_t i = 0; i < owner.size(); ++i)
        for (std::size_t j = 0; j < sverts.size(); ++j)
            if (g.adjacent(owner[i], sverts[j])) adj[i].push_back(int(j));
    std::vector<int> match_l(owner.size(), -1), match_r(sverts.size(), -1);
    auto augment = [&](auto&& self, int i, std::vector<char>& seen) -> bool {
        for (int j : adj[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (match_r[j] == -1 || self(self, match_r[j], seen)) {
                match_l[i] = j;
                match_r[j] = i;
                return true;
            }
        }
        return false;
    };

    auto koenig_blocker = [&]() {
        std::vector<char> zl(owner.size(), 0), zr(sverts.size(), 0);
        std::vector<int> stack;
        for (std::size_t i = 0; i < owner.size(); ++i)
            if (match_l[i] == -1) {
                zl[i] = 1;
                stack.push_back(int(i));
            }
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j : adj[i]) {
                if (zr[j] || match_l[i] == j) continue;
                zr[j] = 1;
                if (match_r[j] != -1 && !zl[match_r[j]]) {
                    zl[match_r[j]] = 1;
                    stack.push_back(match_r[j]);
                }
            }
        }
        VertexSet blocker(n);
        for (std::size_t i = 0; i < owner.size(); ++i)
            if (!zl[i]) blocker.insert(owner[i]);
        for (std::size_t j = 0; j < sverts.size(); ++j)
            if (zr[j]) blocker.insert(sverts[j]);
        return blocker;
    };

    int matched = 0;
    for (std::size_t i = 0; i < owner.size() && int(i) < small * d_size; ++i) {
        std::vector<char> seen(sverts.size(), 0);
        if (augment(augment, int(i), seen)) ++matched;
    }
    if (matched < small * d_size) return MatchingObstruction{koenig_blocker()};
    for (std::size_t vi = 0; vi < dverts.size() && matched < r; ++vi) {
        if (bonus_of[vi] == -1) continue;
        std::vector<char> seen(sverts.size(), 0);
        if (augment(augment, bonus_of[vi], seen)) ++matched;
    }
    if (matched < r) return MatchingObstruction{koenig_blocker()};

    std::map<int, std::vector<int>> leaves_of;
    for (std::size_t i = 0; i < owner.size(); ++i)
        if (match_l[i] != -1) leaves_of[owner[i]].push_back(sverts[match_l[i]]);
    StarMatching m;
    for (int v : dverts) {
        auto ls = leaves_of[v];
        std::sort(ls.begin(), ls.end());
        m.stars.push_back({v, ls});
    }
    return finish(std::move(m));
}

// ---------------------------------------------------------------------------
// Generalized star-matching: disjoint r-sets of s-partners, one per
// component of g - s, each backed by a good star-matching.
// ---------------------------------------------------------------------------

struct ComponentAssignment {
    VertexSet component;
    VertexSet partners;  // exactly r vertices of s
    GoodMatchingCertificate certificate;
};

struct GeneralizedMatching {
    std::vector<ComponentAssignment> assignments;  // canonical component order
};

struct GeneralizedObstruction {
    VertexSet cutset;  // the assembled set whose ratio defeats the toughness bound
    Rational ratio;
};

class SearchExhaustedError : public std::runtime_error {
public:
    explicit SearchExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

inline std::variant<GeneralizedMatching, GeneralizedObstruction> generalized_k1r_matching(
    const Graph& g, const VertexSet& s, int r) {
    if (!is_cutset(g, s)) throw MalformedInput("generalized_k1r_matching: s is not a cutset");
    if (r < 1) throw MalformedInput("generalized_k1r_matching: r must be positive");
    int n = g.vertex_count();
    auto comps = components(g, s);
    int ell = int(comps.size());

    std::vector<std::optional<ComponentAssignment>> assign(ell);
    long long budget = config().matching_node_budget;
    std::map<std::pair<int, std::vector<std::uint64_t>>, bool> failed_memo;

    // a component with no good star-matching at all yields a self-contained
    // witness: its blocker already severs the remainder from everything
    for (int i = 0; i < ell; ++i) {
        auto full = good_star_matching(g, s, comps[i], r);
        if (auto* obs = std::get_if<MatchingObstruction>(&full)) {
            int c = component_count(g, obs->blocker);
            if (c < 2)
                raise_structure("generalized_k1r_matching: full-range witness not a cutset");
            return GeneralizedObstruction{obs->blocker, Rational(obs->blocker.count(), c)};
        }
    }

    auto used_except = [&](int skip_a, int skip_b) {
        VertexSet used(n);
        for (int j = 0; j < ell; ++j) {
            if (j == skip_a || j == skip_b) continue;
            if (assign[j]) used |= assign[j]->partners;
        }
        return used;
    };

    auto attempt = [&](int i, const VertexSet& allowed)
        -> std::optional<ComponentAssignment> {
        if (--budget < 0)
            throw SearchExhaustedError("generalized_k1r_matching: node budget exhausted");
        auto key = std::make_pair(i, allowed.raw_words());
        if (auto it = failed_memo.find(key); it != failed_memo.end()) return std::nullopt;
        auto res = good_star_matching(g, s, comps[i], r, std::nullopt, allowed);
        if (std::holds_alternative<MatchingObstruction>(res)) {
            failed_memo[key] = true;
            return std::nullopt;
        }
        auto& cert = std::get<GoodMatchingCertificate>(res);
        ComponentAssignment a;
        a.component = comps[i];
        a.partners = cert.matching.covered_leaves(n);
        a.certificate = std::move(cert);
        return a;
    };

    // Alternating augmentation: to place component i, try the free pool
    // first, then progressively release the partner sets of other assigned
    // components and re-home those components recursively.
    std::vector<char> on_path(ell, 0);
    auto try_assign = [&](auto&& self, int i) -> bool {
        on_path[i] = 1;
        std::vector<int> candidates;
        for (int j = 0; j < ell; ++j)
            if (j != i && assign[j] && !on_path[j]) candidates.push_back(j);
        int m = int(candidates.size());
        for (int size = 0; size <= m; ++size) {
            std::vector<int> pick(size);
            for (int k = 0; k < size; ++k) pick[k] = k;
            bool more = true;
            while (more) {
                VertexSet allowed = s;
                {
                    VertexSet used(n);
                    std::vector<char> freed(ell, 0);
                    for (int k : pick) freed[candidates[k]] = 1;
                    for (int j = 0; j < ell; ++j)
                        if (j != i && assign[j] && !freed[j]) used |= assign[j]->partners;
                    allowed -= used;
                }
                if (auto found = attempt(i, allowed)) {
                    auto snapshot = assign;
                    std::vector<int> to_rehome;
                    for (int k : pick) {
                        int j = candidates[k];
                        assign[j].reset();
                        to_rehome.push_back(j);
                    }
                    assign[i] = std::move(found);
                    bool ok = true;
                    for (int j : to_rehome) {
                        if (!assign[j] && !self(self, j)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        on_path[i] = 0;
                        return true;
                    }
                    assign = snapshot;
                }
                // next combination of released components
                int pos = size - 1;
                while (pos >= 0 && pick[pos] == m - size + pos) --pos;
                if (pos < 0) {
                    more = false;
                } else {
                    ++pick[pos];
                    for (int q = pos + 1; q < size; ++q) pick[q] = pick[q - 1] + 1;
                }
                if (size == 0) more = false;
            }
        }
        on_path[i] = 0;
        return false;
    };

    // saturate as many components as possible before judging failure
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < ell; ++i) {
            if (assign[i]) continue;
            std::fill(on_path.begin(), on_path.end(), 0);
            if (try_assign(try_assign, i)) progress = true;
        }
    }
    // Assemble the failure set for a stuck component by alternating closure:
    // its separation witness against the free pool, the partners of every
    // assigned component its remainder still reaches, and their witnesses in
    // turn.  A closure member that can re-home onto the free pool exposes a
    // missed rearrangement; it is re-homed once, and unassigned outright the
    // next time so the stuck component can take over its partners.
    std::vector<int> rehome_marks(ell, 0);
    auto assemble = [&](int root) -> std::optional<GeneralizedObstruction> {
        VertexSet pool = s - used_except(-1, -1);
        std::vector<std::optional<VertexSet>> blockers(ell);
        std::vector<char> in_w(ell, 0);
        auto member_witness = [&](int j) -> bool {
            if (--budget < 0)
                throw SearchExhaustedError("generalized_k1r_matching: node budget exhausted");
            auto res = good_star_matching(g, s, comps[j], r, std::nullopt, pool);
            if (auto* obs = std::get_if<MatchingObstruction>(&res)) {
                blockers[j] = obs->blocker;
                return true;
            }
            if (rehome_marks[j]++ == 0) {
                auto& cert = std::get<GoodMatchingCertificate>(res);
                ComponentAssignment a;
                a.component = comps[j];
                a.partners = cert.matching.covered_leaves(n);
                a.certificate = std::move(cert);
                assign[j] = std::move(a);
            } else {
                assign[j].reset();
            }
            return false;
        };
        in_w[root] = 1;
        if (!member_witness(root))
            raise_structure("generalized_k1r_matching: stuck component fits its own pool");
        while (true) {
            VertexSet sstar(n);
            for (int j = 0; j < ell; ++j) {
                if (!in_w[j]) continue;
                sstar |= *blockers[j];
                if (assign[j]) sstar |= assign[j]->partners;
            }
            bool grew = false;
            for (int j = 0; j < ell && !grew; ++j) {
                if (!in_w[j]) continue;
                VertexSet leftover = (neighborhood_of_set(g, comps[j] - sstar) & s) - sstar;
                if (!leftover.any()) continue;
                for (int k = 0; k < ell; ++k) {
                    if (in_w[k] || !assign[k] || !assign[k]->partners.intersects(leftover))
                        continue;
                    in_w[k] = 1;
                    if (!member_witness(k)) return std::nullopt;  // state changed, retry
                    grew = true;
                }
                if (!grew)
                    throw SearchExhaustedError(
                        "generalized_k1r_matching: closure cannot absorb free edges");
            }
            if (grew) continue;
            int c = component_count(g, sstar);
            if (c < 2)
                throw SearchExhaustedError(
                    "generalized_k1r_matching: assembled failure set is not a cutset");
            return GeneralizedObstruction{sstar, Rational(sstar.count(), c)};
        }
    };

    long long orchestration_guard = 16LL * ell * ell + 64;
    int last_pending = -1;
    while (true) {
        int pending = -1;
        if (last_pending != -1 && !assign[last_pending])
            pending = last_pending;  // keep working the same stuck component
        else
            for (int i = 0; i < ell; ++i)
                if (!assign[i]) {
                    pending = i;
                    break;
                }
        if (pending == -1) break;
        if (--orchestration_guard < 0)
            throw SearchExhaustedError("generalized_k1r_matching: rearrangement limit reached");
        if (pending != last_pending) {
            std::fill(rehome_marks.begin(), rehome_marks.end(), 0);
            last_pending = pending;
        }
        std::fill(on_path.begin(), on_path.end(), 0);
        if (try_assign(try_assign, pending)) continue;
        if (auto obstruction = assemble(pending)) return *obstruction;
    }

    GeneralizedMatching out;
    for (int i = 0; i < ell; ++i) out.assignments.push_back(std::move(*assign[i]));
    return out;
}

}  // namespace toughham
