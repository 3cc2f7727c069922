#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toughham/cograph_ham.hpp"
#include "toughham/connectivity.hpp"
#include "toughham/freeness.hpp"
#include "toughham/graph.hpp"
#include "toughham/matchings.hpp"

namespace toughham {

// Disjoint paths covering a target area of g - s, each path starting and
// ending in s.  For basic covers the paths stripped of their s-vertices form
// a basic path-cover of the target: component blocks contiguous, scattering
// vertices internal between blocks.
struct SMatchedPathCover {
    std::vector<Path> paths;
    VertexSet host_set;        // S
    VertexSet target;          // the vertices of g - s being covered
    VertexSet scattering_set;  // W of the target (empty when s(H) <= 0)
    bool basic = false;
};

namespace detail_pc {

inline int second(const Path& p) { return p.vertices[1]; }
inline int penultimate(const Path& p) { return p.vertices[p.length() - 2]; }

// paths of the cover stripped of every s-vertex, split where they occurred
inline std::vector<Path> strip_host(const SMatchedPathCover& c) {
    std::vector<Path> out;
    for (const auto& p : c.paths) {
        std::vector<int> run;
        for (int v : p.vertices) {
            if (c.host_set.contains(v)) {
                if (!run.empty()) out.emplace_back(run);
                run.clear();
            } else {
                run.push_back(v);
            }
        }
        if (!run.empty()) out.emplace_back(run);
    }
    return out;
}

}  // namespace detail_pc

// Full recomputation of the cover invariants; returns a description of the
// first failure.  expected_count applies to the stripped cover.
inline std::optional<std::string> validate_s_matched_cover(const Graph& g,
                                                           const SMatchedPathCover& c,
                                                           bool require_basic,
                                                           std::optional<int> expected_count) {
    VertexSet seen(g.vertex_count());
    for (const auto& p : c.paths) {
        if (p.length() < 3) return "path too short to be s-matched";
        if (!p.verify(g)) return "invalid path";
        if (!c.host_set.contains(p.front()) || !c.host_set.contains(p.back()))
            return "endpoint outside the host set";
        for (int v : p.vertices) {
            if (seen.contains(v)) return "paths overlap";
            seen.insert(v);
        }
    }
    if (seen - c.host_set != c.target) return "covered area differs from the target";
    if (!require_basic) return std::nullopt;

    for (const auto& p : c.paths)
        for (int i = 0; i + 1 < p.length(); ++i)
            if (c.host_set.contains(p.vertices[i]) && c.host_set.contains(p.vertices[i + 1]))
                return "adjacent host vertices on a path";

    auto sub = induced(g, c.target);
    VertexSet w_local(sub.graph.vertex_count());
    c.scattering_set.for_each([&](int v) { w_local.insert(sub.to_child(v)); });
    std::vector<Path> stripped;
    for (const auto& p : detail_pc::strip_host(c)) {
        std::vector<int> mapped;
        for (int v : p.vertices) mapped.push_back(sub.to_child(v));
        stripped.emplace_back(mapped);
    }
    if (auto err = check_basic_cover(sub.graph, w_local, stripped, expected_count))
        return "stripped cover not basic: " + *err;

    // separation: partners of distinct paths live in distinct blocks
    for (std::size_t i = 0; i < c.paths.size(); ++i)
        for (std::size_t j = i + 1; j < c.paths.size(); ++j) {
            int pi[2] = {detail_pc::second(c.paths[i]), detail_pc::penultimate(c.paths[i])};
            int pj[2] = {detail_pc::second(c.paths[j]), detail_pc::penultimate(c.paths[j])};
            for (int a : pi)
                for (int b : pj)
                    if (a != b && g.adjacent(a, b)) return "partner separation violated";
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Linking two s-matched paths.
// ---------------------------------------------------------------------------

// The quoted pattern over endpoints and partners, tried across the
// orientations of the second path; the produced link concatenates through
// the first available bridge edge, dropping the s-vertex it bypasses.
inline std::optional<Path> check_linkable(const Graph& g, const VertexSet& s,
                                          const Path& q1, const Path& q2) {
    if (q1.length() < 3 || q2.length() < 3) return std::nullopt;
    for (const auto& p : {q1, q2}) {
        if (!s.contains(p.front()) || !s.contains(p.back()))
            throw MalformedInput("check_linkable: paths are not s-matched");
    }
    for (int v : q2.vertices)
        for (int u : q1.vertices)
            if (u == v) throw MalformedInput("check_linkable: paths overlap");

    auto x1 = q1.front();
    auto y1 = q1.back();
    auto u1 = detail_pc::second(q1);
    auto v1 = detail_pc::penultimate(q1);

    for (const Path& b : {q2, q2.reversed()}) {
        int x2 = b.front(), y2 = b.back();
        int u2 = detail_pc::second(b), v2 = detail_pc::penultimate(b);
        bool cond_a = (g.adjacent(y1, u2) || g.adjacent(x2, v1)) &&
                      (g.adjacent(y2, u1) || g.adjacent(x1, v2));
        bool cond_b = (g.adjacent(x1, u2) || g.adjacent(x2, u1)) &&
                      (g.adjacent(y2, v1) || g.adjacent(y1, v2));
        if (!cond_a && !cond_b) continue;
        // assemble through the first bridge available, canonical order
        auto concat_drop_head = [&](const Path& a, const Path& tail) {
            std::vector<int> out = a.vertices;
            out.insert(out.end(), tail.vertices.begin() + 1, tail.vertices.end());
            return Path(out);
        };
        if (g.adjacent(y1, u2)) return concat_drop_head(q1, b);  // x1..y1 u2..y2
        if (g.adjacent(x2, v1)) {
            Path head = q1;  // x1..v1, drop y1
            head.vertices.pop_back();
            std::vector<int> out = head.vertices;
            out.insert(out.end(), b.vertices.begin(), b.vertices.end());
            return Path(out);
        }
        if (g.adjacent(x1, u2)) return concat_drop_head(q1.reversed(), b);
        if (g.adjacent(y2, u1)) return concat_drop_head(b, q1);
        if (g.adjacent(x2, u1)) {
            Path head = b.reversed();
            head.vertices.pop_back();  // hold x2 as the junction
            std::vector<int> out = head.vertices;
            out.push_back(x2);
            out.insert(out.end(), q1.vertices.begin() + 1, q1.vertices.end());
            return Path(out);
        }
        if (g.adjacent(y2, v1)) {
            Path head = q1;
            head.vertices.pop_back();
            std::vector<int> out = head.vertices;
            auto rev = b.reversed();
            out.insert(out.end(), rev.vertices.begin(), rev.vertices.end());
            return Path(out);
        }
        if (g.adjacent(y1, v2)) {
            std::vector<int> out = q1.vertices;
            auto rev = b.reversed();
            out.insert(out.end(), rev.vertices.begin() + 1, rev.vertices.end());
            return Path(out);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Re-threading a removed scattering vertex into a cover of d - z.
// ---------------------------------------------------------------------------

inline SMatchedPathCover insert_minimal(const Graph& g, const VertexSet& s,
                                        const VertexSet& d, int z,
                                        const SMatchedPathCover& cover) {
    int n = g.vertex_count();
    {
        bool found = false;
        for (const auto& c : components(g, s))
            if (c == d) found = true;
        if (!found) throw MalformedInput("insert_minimal: d is not a component of g - s");
    }
    auto d_sub = induced(g, d);
    auto sc = scattering(d_sub.graph);
    if (!sc.value || *sc.value < 0)
        throw MalformedInput("insert_minimal: component has negative scattering");
    VertexSet su(d_sub.graph.vertex_count()), sv(d_sub.graph.vertex_count());
    if (detail_ch::is_balanced_complete_bipartite(d_sub.graph, su, sv))
        throw MalformedInput("insert_minimal: component is complete bipartite");
    VertexSet w(n);
    sc.witness->for_each([&](int v) { w.insert(d_sub.to_parent[v]); });
    if (!w.contains(z)) throw MalformedInput("insert_minimal: z outside the scattering set");
    {
        VertexSet w_local(d_sub.graph.vertex_count());
        w.for_each([&](int v) { w_local.insert(d_sub.to_child(v)); });
        auto me = minimal_element(d_sub.graph, w_local);
        bool z_minimal = false;
        // z must lie in some inclusion-minimal cutset inside the set
        VertexSet probe = w_local;
        std::vector<int> verts = probe.to_vector();
        detail::for_each_subset_by_cardinality(int(verts.size()), [&](std::uint64_t mask, int) {
            if (!mask || z_minimal) return !z_minimal;
            VertexSet cand = detail::mask_to_set(mask, verts, d_sub.graph.vertex_count());
            if (cand.contains(d_sub.to_child(z)) && is_minimal_cutset(d_sub.graph, cand))
                z_minimal = true;
            return !z_minimal;
        });
        (void)me;
        if (!z_minimal)
            throw MalformedInput("insert_minimal: z is not a minimal element of the set");
    }
    VertexSet d_minus_z = d;
    d_minus_z.erase(z);
    if (auto err = validate_s_matched_cover(g, cover, cover.basic, std::nullopt))
        throw MalformedInput("insert_minimal: cover invalid: " + *err);
    if (cover.target != d_minus_z)
        throw MalformedInput("insert_minimal: cover does not target d - z");

    SMatchedPathCover out = cover;
    out.target = d;

    if (cover.paths.size() >= 2) {
        // link the first two components through z; the minimal element is
        // complete to every block so both junction edges must exist
        Path p0 = cover.paths[0], p1 = cover.paths[1];
        int a = detail_pc::penultimate(p0);   // v_1
        int b = detail_pc::second(p1);        // u_2
        if (!g.adjacent(z, a)) raise_missing_edge("inserting: z reaches the first partner", z, a);
        if (!g.adjacent(z, b)) raise_missing_edge("inserting: z reaches the second partner", z, b);
        std::vector<int> merged(p0.vertices.begin(), p0.vertices.end() - 1);  // drop y_1
        merged.push_back(z);
        merged.insert(merged.end(), p1.vertices.begin() + 1, p1.vertices.end());  // drop x_2
        out.paths.clear();
        out.paths.emplace_back(merged);
        for (std::size_t i = 2; i < cover.paths.size(); ++i) out.paths.push_back(cover.paths[i]);
        out.scattering_set = w;  // the cover is now basic around d's own set
        return out;
    }

    // single component: thread z inside the path
    const Path& q = cover.paths[0];
    VertexSet w_rest = w;
    w_rest.erase(z);
    auto comps_blocks = components(g, (VertexSet::full(n) - d) | w);  // blocks of d - W

    auto insert_between = [&](std::size_t idx) {
        Path np = q;
        np.vertices.insert(np.vertices.begin() + idx + 1, z);
        out.paths = {np};
        out.basic = false;
        return out;
    };

    // a block of size two or more gives two same-block consecutive vertices
    for (std::size_t i = 1; i + 2 < std::size_t(q.length()); ++i) {
        int p = q.vertices[i], r = q.vertices[i + 1];
        if (s.contains(p) || s.contains(r) || w_rest.contains(p) || w_rest.contains(r)) continue;
        bool same_block = false;
        for (const auto& blk : comps_blocks)
            if (blk.contains(p) && blk.contains(r)) same_block = true;
        if (!same_block) continue;
        if (!g.adjacent(z, p)) raise_missing_edge("inserting: z reaches the block", z, p);
        if (!g.adjacent(z, r)) raise_missing_edge("inserting: z reaches the block", z, r);
        return insert_between(i);
    }

    // otherwise the scattering set spans an edge
    VertexSet w_all = w;
    int z1 = -1, z2 = -1;
    w_all.for_each([&](int a) {
        if (z1 != -1) return;
        VertexSet nb = neighbors_in(g, a, w_all);
        int b = nb.first();
        if (b != -1) {
            z1 = a;
            z2 = (b == a) ? nb.next_after(a) : b;
        }
    });
    if (z1 == -1) raise_structure("inserting: no block pair and no edge inside the set");

    if (z == z1 || z == z2) {
        int other = (z == z1) ? z2 : z1;
        // insert z beside its set-neighbor
        auto it = std::find(q.vertices.begin(), q.vertices.end(), other);
        if (it == q.vertices.end()) raise_structure("inserting: set neighbor missing from the path");
        std::size_t idx = std::size_t(it - q.vertices.begin());
        for (int side : {1, -1}) {
            std::size_t nb_idx = idx + side;
            if (nb_idx == 0 || nb_idx + 1 >= std::size_t(q.length())) continue;
            int nb = q.vertices[nb_idx];
            if (s.contains(nb) || w_rest.contains(nb)) continue;
            if (!g.adjacent(z, nb)) continue;
            return insert_between(std::min(idx, nb_idx));
        }
        raise_structure("inserting: set neighbor has no usable flank");
    }

    // swap: z takes z1's place, z1 slides in beside z2
    {
        // order so the components z2 reaches are inside those z1 reaches
        auto touched = [&](int zz) {
            VertexSet t(n);
            for (std::size_t ci = 0; ci < comps_blocks.size(); ++ci)
                if (g.neighbors(zz).intersects(comps_blocks[ci])) t.insert(int(ci));
            return t;
        };
        VertexSet t1 = touched(z1), t2 = touched(z2);
        if (!t2.is_subset_of(t1)) {
            if (t1.is_subset_of(t2))
                std::swap(z1, z2);
            else
                raise_structure("inserting: set edge with incomparable reach");
        }
        auto it = std::find(q.vertices.begin(), q.vertices.end(), z1);
        if (it == q.vertices.end()) raise_structure("inserting: swap vertex missing");
        std::size_t idx = std::size_t(it - q.vertices.begin());
        int left = q.vertices[idx - 1], right = q.vertices[idx + 1];
        if (!g.adjacent(z, left)) raise_missing_edge("inserting: swap flank", z, left);
        if (!g.adjacent(z, right)) raise_missing_edge("inserting: swap flank", z, right);
        Path np = q;
        np.vertices[idx] = z;
        // now z1 goes beside z2
        auto it2 = std::find(np.vertices.begin(), np.vertices.end(), z2);
        if (it2 == np.vertices.end()) raise_structure("inserting: swap companion missing");
        std::size_t idx2 = std::size_t(it2 - np.vertices.begin());
        for (int side : {1, -1}) {
            std::size_t nb_idx = idx2 + side;
            if (nb_idx == 0 || nb_idx + 1 >= std::size_t(np.length())) continue;
            int nb = np.vertices[nb_idx];
            if (s.contains(nb)) continue;
            if (!g.adjacent(z1, nb)) continue;
            np.vertices.insert(np.vertices.begin() + std::min(idx2, nb_idx) + 1, z1);
            out.paths = {np};
            out.basic = false;
            return out;
        }
        raise_structure("inserting: swap companion has no usable flank");
    }
}

// ---------------------------------------------------------------------------
// The covering lemmas.
// ---------------------------------------------------------------------------

namespace detail_pc {

inline void check_wrt_hypothesis(const Graph& g, const VertexSet& s, const Rational& t) {
    int reduced = g.vertex_count() - detail::universal_vertices(g).count();
    if (reduced > config().enumeration_cap) return;  // trusted beyond desk scale
    if (auto v = is_t_tough_wrt(g, s, t)) throw HypothesisError(std::move(*v));
}

inline void check_freeness(const Graph& g, const VertexSet& s) {
    if (g.vertex_count() <= 64) {
        if (auto wtn = find_induced_p4_union_p1(g)) {
            HypothesisViolation v;
            v.kind = ViolationKind::BadStructure;
            v.claim = "input holds an induced P4 plus isolated vertex";
            VertexSet ws(g.vertex_count());
            for (int x : wtn->vertices) ws.insert(x);
            v.witness_set = ws;
            throw HypothesisError(std::move(v));
        }
    }
    auto rest = induced(g, VertexSet::full(g.vertex_count()) - s);
    if (!is_p4_free(rest.graph)) {
        HypothesisViolation v;
        v.kind = ViolationKind::BadStructure;
        v.claim = "g - s is not P4-free";
        throw HypothesisError(std::move(v));
    }
}

// Hamiltonian (u,v)-path of the induced component, by whichever regime its
// scattering admits; ids are in the parent graph.
inline Path component_pair_path(const Graph& g, const VertexSet& d, int u, int v) {
    auto sub = induced(g, d);
    auto cert = scattering(sub.graph);
    detail_ch::Anchors req{sub.to_child(u), sub.to_child(v)};
    auto out = detail_ch::build_cover(sub.graph, cert, req);
    if (out.paths.size() != 1) raise_structure("component path: cover not a single path");
    Path p = out.paths[0];
    std::vector<int> mapped;
    for (int x : p.vertices) mapped.push_back(sub.to_parent[x]);
    Path res(mapped);
    if (res.back() == u && res.front() == v) res = res.reversed();
    if (res.front() != u || res.back() != v)
        raise_structure("component path: endpoints not honored");
    return res;
}

}  // namespace detail_pc

// Basic s-matched cover of g - s with exactly s(g-s) components, built by
// induction over the union of the components' scattering sets: the base case
// pairs every component with two partners from s, the step carves a minimal
// cutset out of a scattered component and relinks through it.
inline SMatchedPathCover s_matched_basic_cover(const Graph& g, const VertexSet& s) {
    int n = g.vertex_count();
    if (!is_cutset(g, s) && component_count(g, s) != 1)
        throw MalformedInput("s_matched_basic_cover: s removes everything");
    detail_pc::check_freeness(g, s);
    auto comps = components(g, s);
    int total_s = 0;
    std::vector<ScatteringCertificate> certs;
    std::vector<VertexSet> sets;  // per-component scattering share (mapped to g)
    VertexSet w_union(n);
    for (const auto& c : comps) {
        auto sc = scattering_within(g, c);
        certs.push_back(sc);
        VertexSet share(n);
        if (sc.value && *sc.value >= 1) share = *sc.witness;
        sets.push_back(share);
        w_union |= share;
        total_s += sc.value ? std::max(1, *sc.value) : 1;
    }
    if (total_s < 1 || (int(comps.size()) == 1 && (!certs[0].value || *certs[0].value < 1)))
        throw MalformedInput("s_matched_basic_cover: scattering of g - s below one");
    detail_pc::check_wrt_hypothesis(g, s, Rational(4));

    if (!w_union.any()) {
        // base: every component pairs with two partners and contributes one path
        auto gm = generalized_k1r_matching(g, s, 2);
        if (auto* obs = std::get_if<GeneralizedObstruction>(&gm)) {
            HypothesisViolation v;
            v.kind = ViolationKind::ToughnessWrt;
            v.claim = "partner matching infeasible";
            v.witness_set = obs->cutset;
            v.ratio = obs->ratio;
            throw HypothesisError(std::move(v));
        }
        auto& matching = std::get<GeneralizedMatching>(gm);
        SMatchedPathCover out;
        out.host_set = s;
        out.target = VertexSet::full(n) - s;
        out.scattering_set = VertexSet(n);
        out.basic = true;
        for (const auto& a : matching.assignments) {
            int x, y, u, v;
            if (a.component.count() == 1) {
                u = v = a.component.first();
                auto ps = a.partners.to_vector();
                x = ps[0];
                y = ps[1];
                out.paths.push_back(Path({x, u, y}));
            } else {
                const auto& stars = a.certificate.matching.stars;
                int c0 = stars[0].center, l0 = stars[0].leaves[0];
                int c1 = stars[1].center, l1 = stars[1].leaves[0];
                if (l0 > l1) {
                    std::swap(c0, c1);
                    std::swap(l0, l1);
                }
                x = l0;
                y = l1;
                u = c0;
                v = c1;
                Path r = detail_pc::component_pair_path(g, a.component, u, v);
                std::vector<int> q{x};
                q.insert(q.end(), r.vertices.begin(), r.vertices.end());
                q.push_back(y);
                out.paths.emplace_back(q);
            }
        }
        if (auto err = validate_s_matched_cover(g, out, true, total_s))
            raise_structure("s_matched_basic_cover base: " + *err);
        return out;
    }

    // inductive step on the first component with a nonempty scattering share
    int pick = -1;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (sets[i].any()) {
            pick = int(i);
            break;
        }
    const VertexSet& d1 = comps[pick];
    auto d1_sub = induced(g, d1);
    VertexSet s1_local(d1_sub.graph.vertex_count());
    sets[pick].for_each([&](int v) { s1_local.insert(d1_sub.to_child(v)); });
    VertexSet s11_local = minimal_cutset_within(d1_sub.graph, s1_local);
    VertexSet s11(n);
    s11_local.for_each([&](int v) { s11.insert(d1_sub.to_parent[v]); });

    // the carved cutset must see every remaining component vertex
    (d1 - s11).for_each([&](int v) {
        s11.for_each([&](int x) {
            if (!g.adjacent(x, v))
                raise_missing_edge("cutset complete to the component remainder", x, v);
        });
    });

    auto inner = s_matched_basic_cover(g, s | s11);

    // paths covering d1's remainder, those holding carved vertices first
    std::vector<std::size_t> covering;
    for (std::size_t i = 0; i < inner.paths.size(); ++i) {
        const auto& p = inner.paths[i];
        bool touches = false, holds_s11 = false;
        for (int v : p.vertices) {
            if (d1.contains(v) && !s11.contains(v)) touches = true;
            if (s11.contains(v)) holds_s11 = true;
        }
        if (touches || holds_s11) covering.push_back(i);
    }
    std::stable_sort(covering.begin(), covering.end(), [&](std::size_t a, std::size_t b) {
        auto holds = [&](std::size_t idx) {
            for (int v : inner.paths[idx].vertices)
                if (s11.contains(v)) return true;
            return false;
        };
        return holds(a) > holds(b);
    });
    int p_count = s11.count();
    if (int(covering.size()) < p_count + 1)
        raise_structure("relink: too few paths over the carved component");
    covering.resize(p_count + 1);

    // two of the selected paths still hold an endpoint in the original s
    int first_s = -1, last_s = -1;
    for (std::size_t k = 0; k < covering.size(); ++k) {
        const auto& p = inner.paths[covering[k]];
        if (s.contains(p.front()) || s.contains(p.back())) {
            if (first_s == -1)
                first_s = int(k);
            else if (last_s == -1)
                last_s = int(k);
        }
    }
    if (first_s == -1 || last_s == -1)
        raise_structure("relink: fewer than two host endpoints among the selected paths");

    std::vector<int> linkers = s11.to_vector();
    std::vector<std::vector<int>> segments;
    {
        Path head = inner.paths[covering[first_s]];
        if (!s.contains(head.front())) head = head.reversed();
        head.vertices.pop_back();  // keep the host endpoint, drop the far one
        segments.push_back(head.vertices);
        for (std::size_t k = 0; k < covering.size(); ++k) {
            if (int(k) == first_s || int(k) == last_s) continue;
            const Path& p = inner.paths[covering[k]];
            segments.emplace_back(p.vertices.begin() + 1, p.vertices.end() - 1);
        }
        Path tail = inner.paths[covering[last_s]];
        if (!s.contains(tail.back())) tail = tail.reversed();
        tail.vertices.erase(tail.vertices.begin());  // drop the near endpoint
        segments.push_back(tail.vertices);
    }

    std::vector<int> merged = segments.front();
    for (std::size_t k = 1; k < segments.size(); ++k) {
        int linker = linkers[k - 1];
        if (!g.adjacent(merged.back(), linker))
            raise_missing_edge("relink junction", merged.back(), linker);
        if (!g.adjacent(linker, segments[k].front()))
            raise_missing_edge("relink junction", linker, segments[k].front());
        merged.push_back(linker);
        merged.insert(merged.end(), segments[k].begin(), segments[k].end());
    }

    SMatchedPathCover out;
    out.host_set = s;
    out.target = VertexSet::full(n) - s;
    out.scattering_set = w_union;
    out.basic = true;
    out.paths.emplace_back(merged);
    std::vector<char> used(inner.paths.size(), 0);
    for (auto idx : covering) used[idx] = 1;
    for (std::size_t i = 0; i < inner.paths.size(); ++i)
        if (!used[i]) out.paths.push_back(inner.paths[i]);
    if (auto err = validate_s_matched_cover(g, out, true, total_s))
        raise_structure("s_matched_basic_cover step: " + *err);
    return out;
}

// Single s-matched path over all of g - s, for s(g-s) <= 0.
inline SMatchedPathCover single_component_cover(const Graph& g, const VertexSet& s) {
    int n = g.vertex_count();
    detail_pc::check_freeness(g, s);
    VertexSet h = VertexSet::full(n) - s;
    if (!h.any()) throw MalformedInput("single_component_cover: empty remainder");
    auto sub = induced(g, h);
    auto sc = scattering(sub.graph);
    if (sc.value && *sc.value > 0)
        throw MalformedInput("single_component_cover: scattering of g - s above zero");
    detail_pc::check_wrt_hypothesis(g, s, Rational(9, 2));

    auto finish = [&](Path q, bool basic) {
        SMatchedPathCover out;
        out.host_set = s;
        out.target = h;
        out.scattering_set = VertexSet(n);
        out.basic = basic;
        out.paths = {std::move(q)};
        if (auto err = validate_s_matched_cover(g, out, basic, 1))
            raise_structure("single_component_cover: " + *err);
        return out;
    };

    if (h.count() == 1) {
        int u = h.first();
        VertexSet anchors = neighbors_in(g, u, s);
        if (anchors.count() < 2)
            raise_structure("single anchor pair unavailable for the lone vertex");
        int x = anchors.first(), y = anchors.next_after(x);
        return finish(Path({x, u, y}), true);
    }

    VertexSet su(sub.graph.vertex_count()), sv(sub.graph.vertex_count());
    bool balanced = detail_ch::is_balanced_complete_bipartite(sub.graph, su, sv);

    if (sc.value && *sc.value == 0 && !balanced) {
        // peel a minimal element of the scattering set, cover, re-thread
        VertexSet w(n);
        sc.witness->for_each([&](int v) { w.insert(sub.to_parent[v]); });
        VertexSet w_local = *sc.witness;
        auto me = minimal_element(sub.graph, w_local);
        int z = sub.to_parent[me.vertex];
        VertexSet keep = VertexSet::full(n);
        keep.erase(z);
        auto shrunk = induced(g, keep);
        VertexSet s_shrunk(shrunk.graph.vertex_count());
        s.for_each([&](int v) { s_shrunk.insert(shrunk.to_child(v)); });
        auto inner = s_matched_basic_cover(shrunk.graph, s_shrunk);
        SMatchedPathCover lifted;
        lifted.host_set = s;
        lifted.target = h - VertexSet::of(n, {z});
        lifted.basic = inner.basic;
        VertexSet wl(n);
        inner.scattering_set.for_each([&](int v) { wl.insert(shrunk.to_parent[v]); });
        lifted.scattering_set = wl;
        for (const auto& p : inner.paths) {
            std::vector<int> mapped;
            for (int v : p.vertices) mapped.push_back(shrunk.to_parent[v]);
            lifted.paths.emplace_back(mapped);
        }
        auto threaded = insert_minimal(g, s, h, z, lifted);
        return finish(threaded.paths[0], false);
    }

    // anchors: lexicographically smallest (x, y, u, v) with the side split
    // for the balanced bipartite case
    for (int x = s.first(); x != -1; x = s.next_after(x)) {
        for (int y = s.first(); y != -1; y = s.next_after(y)) {
            if (y == x) continue;
            VertexSet us = neighbors_in(g, x, h);
            VertexSet vs = neighbors_in(g, y, h);
            for (int u = us.first(); u != -1; u = us.next_after(u)) {
                for (int v = vs.first(); v != -1; v = vs.next_after(v)) {
                    if (u == v) continue;
                    if (balanced) {
                        bool u_side = su.contains(sub.to_child(u));
                        bool v_side = su.contains(sub.to_child(v));
                        if (u_side == v_side) continue;
                    }
                    Path r = detail_pc::component_pair_path(g, h, u, v);
                    std::vector<int> q{x};
                    q.insert(q.end(), r.vertices.begin(), r.vertices.end());
                    q.push_back(y);
                    return finish(Path(q), true);
                }
            }
        }
    }
    raise_structure("single_component_cover: no anchor tuple available");
}

// Basic cover refined so every component of g - s meets at most two paths,
// by greedy merging through endpoint-partner edges until stuck.
inline SMatchedPathCover bounded_components_cover(const Graph& g, const VertexSet& s) {
    if (!is_minimal_cutset(g, s))
        throw MalformedInput("bounded_components_cover: s is not a minimal cutset");
    auto cover = s_matched_basic_cover(g, s);
    auto comps = components(g, s);

    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (std::size_t i = 0; i < cover.paths.size() && !merged_any; ++i)
            for (std::size_t j = 0; j < cover.paths.size() && !merged_any; ++j) {
                if (i == j) continue;
                const Path& pi = cover.paths[i];
                const Path& pj = cover.paths[j];
                // an endpoint of one adjacent to a partner of the other
                for (const Path& a : {pi, pi.reversed()}) {
                    for (const Path& b : {pj, pj.reversed()}) {
                        if (!g.adjacent(a.back(), detail_pc::second(b))) continue;
                        std::vector<int> m = a.vertices;
                        m.insert(m.end(), b.vertices.begin() + 1, b.vertices.end());
                        std::vector<Path> next;
                        for (std::size_t k = 0; k < cover.paths.size(); ++k)
                            if (k != i && k != j) next.push_back(cover.paths[k]);
                        next.emplace_back(m);
                        cover.paths = std::move(next);
                        merged_any = true;
                        break;
                    }
                    if (merged_any) break;
                }
            }
    }

    for (const auto& comp : comps) {
        int touching = 0;
        for (const auto& p : cover.paths) {
            bool touches = false;
            for (int v : p.vertices)
                if (comp.contains(v)) touches = true;
            if (touches) ++touching;
        }
        auto sc = scattering_within(g, comp);
        int bound = std::min(sc.value ? std::max(1, *sc.value) : 1, 2);
        if (touching > bound) {
            HypothesisViolation v;
            v.kind = ViolationKind::BadStructure;
            v.claim = "component bound exceeded after merging";
            v.witness_set = comp;
            throw HypothesisError(std::move(v));
        }
    }
    if (auto err = validate_s_matched_cover(g, cover, true, std::nullopt))
        raise_structure("bounded_components_cover: " + *err);
    return cover;
}

}  // namespace toughham
