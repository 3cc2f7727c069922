#pragma once

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

#include "toughham/connectivity.hpp"
#include "toughham/freeness.hpp"
#include "toughham/graph.hpp"

namespace toughham {

struct PathCoverResult {
    std::vector<Path> paths;
    VertexSet scattering_set;  // the maximum scattering set the cover is built around
    bool v1_honored = false;   // v1 ended up an endvertex of some path
    bool v2_honored = false;   // single (v1,v2)-path delivered
};

struct Infeasible {
    ScatteringCertificate certificate;  // non-existence proof
};

namespace detail_ch {

struct Anchors {
    std::optional<int> a;
    std::optional<int> b;
};

inline Path complete_graph_path(const Graph& g, Anchors req) {
    int n = g.vertex_count();
    std::vector<int> order;
    for (int v = 0; v < n; ++v)
        if ((!req.a || v != *req.a) && (!req.b || v != *req.b)) order.push_back(v);
    if (req.a) order.insert(order.begin(), *req.a);
    if (req.b) order.push_back(*req.b);
    return Path(order);
}

inline bool is_balanced_complete_bipartite(const Graph& g, VertexSet& side_u,
                                           VertexSet& side_v) {
    int n = g.vertex_count();
    if (n < 2 || n % 2 != 0) return false;
    auto parts = co_components(g);
    if (parts.size() != 2) return false;
    if (parts[0].count() != parts[1].count()) return false;
    for (int guard = 0; guard < 2; ++guard) {
        const auto& p = parts[guard];
        bool edgeless = true;
        p.for_each([&](int v) {
            if (neighbors_in(g, v, p).any()) edgeless = false;
        });
        if (!edgeless) return false;
    }
    side_u = parts[0];
    side_v = parts[1];
    return true;
}

// Hamiltonian path of K_{m,m} honoring anchors: both anchors must sit on
// opposite sides; a single anchor starts the path.
inline Path balanced_cb_path(const VertexSet& side_u, const VertexSet& side_v,
                             Anchors req) {
    VertexSet u = side_u, v = side_v;
    if (req.a && side_v.contains(*req.a)) std::swap(u, v);
    if (req.b && u.contains(*req.b))
        raise_structure("balanced bipartite path: anchors on the same side");
    std::vector<int> us = u.to_vector(), vs = v.to_vector();
    auto move_front = [](std::vector<int>& xs, int val) {
        auto it = std::find(xs.begin(), xs.end(), val);
        std::rotate(xs.begin(), it, it + 1);
    };
    auto move_back = [](std::vector<int>& xs, int val) {
        auto it = std::find(xs.begin(), xs.end(), val);
        std::rotate(it, it + 1, xs.end());
    };
    if (req.a) move_front(us, *req.a);
    if (req.b) move_back(vs, *req.b);
    std::vector<int> seq;
    for (std::size_t i = 0; i < us.size(); ++i) {
        seq.push_back(us[i]);
        seq.push_back(vs[i]);
    }
    return Path(seq);
}

// ---------------------------------------------------------------------------
// Segment arrangement for join-structured constructions: order k_i segments
// per co-component so consecutive segments always come from different parts.
// ---------------------------------------------------------------------------

inline bool arrangement_ok(const std::vector<int>& seq, bool cyclic) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] == seq[i + 1]) return false;
    if (cyclic && seq.size() >= 2 && seq.front() == seq.back()) return false;
    return true;
}

inline std::optional<std::vector<int>> arrange_exact(std::vector<int> counts,
                                                     int last_part, bool cyclic,
                                                     int first_part, long long& budget) {
    std::vector<int> seq;
    auto rec = [&](auto&& self, int back) -> bool {
        if (--budget < 0) return false;
        int rem = 0;
        for (int c : counts) rem += c;
        if (rem == 0) {
            if (last_part >= 0 && seq.back() != last_part) return false;
            if (cyclic && seq.size() >= 2 && seq.front() == seq.back()) return false;
            return true;
        }
        // heaviest pile first keeps the search near the greedy solution
        std::vector<int> order;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0 && int(i) != back) order.push_back(int(i));
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return counts[x] > counts[y]; });
        for (int i : order) {
            if (rem == 1 && last_part >= 0 && i != last_part) continue;
            counts[i]--;
            seq.push_back(i);
            if (self(self, i)) return true;
            seq.pop_back();
            counts[i]++;
        }
        return false;
    };
    if (first_part >= 0) {
        counts[first_part]--;
        seq.push_back(first_part);
    }
    if (!rec(rec, seq.empty() ? -1 : seq.back())) return std::nullopt;
    return seq;
}

// Greedy largest-pile-first with an exact backtracking fallback.  One unit
// of last_part stays reserved for the final slot.
inline std::vector<int> arrange_parts(const std::vector<int>& counts, int first_part,
                                      int last_part, bool cyclic) {
    std::vector<int> rem = counts;
    std::vector<int> seq;
    int total = 0;
    for (int c : rem) total += c;
    if (first_part >= 0) {
        seq.push_back(first_part);
        rem[first_part]--;
    }
    while (int(seq.size()) < total) {
        int left = total - int(seq.size());
        int pick = -1, pick_key = -1;
        for (std::size_t i = 0; i < rem.size(); ++i) {
            if (rem[i] == 0) continue;
            if (!seq.empty() && int(i) == seq.back()) continue;
            if (last_part >= 0 && int(i) == last_part && rem[i] == 1 && left > 1)
                continue;  // reserved for the end
            if (left == 1 && last_part >= 0 && int(i) != last_part) continue;
            int key = rem[i];
            if (pick == -1 || key > pick_key) {
                pick = int(i);
                pick_key = key;
            }
        }
        if (pick == -1) break;
        seq.push_back(pick);
        rem[pick]--;
    }
    if (int(seq.size()) == total && arrangement_ok(seq, cyclic) &&
        (last_part < 0 || seq.back() == last_part))
        return seq;
    long long budget = 2'000'000;
    auto exact = arrange_exact(counts, last_part, cyclic, first_part, budget);
    if (!exact) raise_structure("segment arrangement infeasible");
    return *exact;
}

// ---------------------------------------------------------------------------
// Master cover builder (forward declaration; mutually recursive with the
// join-interleave constructions below).
// ---------------------------------------------------------------------------

struct CoverOutcome {
    std::vector<Path> paths;
    bool a_is_endpoint = false;
    bool ab_single_path = false;
};

CoverOutcome build_cover(const Graph& g, const ScatteringCertificate& cert, Anchors req);

inline void split_at(std::vector<Path>& paths, int vertex) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
        auto& vs = paths[i].vertices;
        auto it = std::find(vs.begin(), vs.end(), vertex);
        if (it == vs.end()) continue;
        if (it == vs.begin() || it + 1 == vs.end()) return;  // already an endpoint
        std::vector<int> left(vs.begin(), it + 1), right(it + 1, vs.end());
        paths[i] = Path(left);
        paths.insert(paths.begin() + i + 1, Path(right));
        return;
    }
    raise_structure("split_at: vertex not covered");
}

// Per-part segment pool used by the interleave constructions.
struct PartSegments {
    VertexSet vertices;
    InducedSubgraph sub;
    std::vector<Path> segments;  // in parent ids
    int size = 0;
};

inline std::vector<PartSegments> part_covers(const Graph& g,
                                             const std::vector<VertexSet>& parts) {
    std::vector<PartSegments> out;
    for (const auto& p : parts) {
        PartSegments ps;
        ps.vertices = p;
        ps.sub = induced(g, p);
        ps.size = p.count();
        auto cert = scattering(ps.sub.graph);
        auto cov = build_cover(ps.sub.graph, cert, {});
        for (auto& path : cov.paths) {
            std::vector<int> mapped;
            for (int v : path.vertices) mapped.push_back(ps.sub.to_parent[v]);
            ps.segments.emplace_back(mapped);
        }
        out.push_back(std::move(ps));
    }
    return out;
}

// Splits one segment of the chosen part to raise its segment count.
inline bool split_one(PartSegments& ps) {
    for (auto& seg : ps.segments) {
        if (seg.length() < 2) continue;
        std::vector<int> left(seg.vertices.begin(), seg.vertices.begin() + 1);
        std::vector<int> right(seg.vertices.begin() + 1, seg.vertices.end());
        seg = Path(left);
        ps.segments.emplace_back(right);
        return true;
    }
    return false;
}

// Raise counts until every part fits the alternating arrangement.
// ends_bonus[i] counts sequence ends pinned to part i (path case only).
inline void balance_counts(std::vector<PartSegments>& parts,
                           const std::vector<int>& ends_bonus, bool cyclic) {
    while (true) {
        int total = 0;
        for (auto& p : parts) total += int(p.segments.size());
        int worst = -1;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            int k = int(parts[i].segments.size());
            int others = total - k;
            int cap = cyclic ? others : others - 1 + ends_bonus[i];
            if (k > cap) worst = int(i);
        }
        if (worst < 0) return;
        bool grown = false;
        for (std::size_t j = 0; j < parts.size() && !grown; ++j) {
            if (int(j) == worst) continue;
            if (split_one(parts[j])) grown = true;
        }
        if (!grown) raise_structure("interleave: cannot balance segment counts");
    }
}

// Hamiltonian (a,b)-path of a connected non-complete P4-free graph with
// s(G) < 0, built across the co-components: segments from different parts
// alternate and every cross edge is present by the join structure.
inline Path join_interleave_path(const Graph& g, int a, int b) {
    auto parts_sets = co_components(g);
    auto parts = part_covers(g, parts_sets);
    int pa = -1, pb = -1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].vertices.contains(a)) pa = int(i);
        if (parts[i].vertices.contains(b)) pb = int(i);
    }

    // make a and b endpoints of segments; same-part anchors need distinct ones
    split_at(parts[pa].segments, a);
    split_at(parts[pb].segments, b);
    if (pa == pb) {
        for (auto& seg : parts[pa].segments) {
            bool has_a = std::find(seg.vertices.begin(), seg.vertices.end(), a) !=
                         seg.vertices.end();
            bool has_b = std::find(seg.vertices.begin(), seg.vertices.end(), b) !=
                         seg.vertices.end();
            if (has_a && has_b) {
                // both endpoints of one segment: cut it in two
                auto& vs = seg.vertices;
                std::vector<int> left(vs.begin(), vs.begin() + vs.size() / 2);
                std::vector<int> right(vs.begin() + vs.size() / 2, vs.end());
                seg = Path(left);
                parts[pa].segments.emplace_back(right);
                break;
            }
        }
    }

    std::vector<int> ends_bonus(parts.size(), 0);
    ends_bonus[pa]++;
    ends_bonus[pb]++;
    balance_counts(parts, ends_bonus, false);

    std::vector<int> counts;
    for (auto& p : parts) counts.push_back(int(p.segments.size()));
    auto seq = arrange_parts(counts, pa, pb, false);

    // deal segments: anchor segments are reserved for the pinned slots
    std::vector<std::vector<Path>> pool(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) pool[i] = parts[i].segments;
    auto extract_with = [&](int part, int vertex) -> Path {
        for (std::size_t i = 0; i < pool[part].size(); ++i) {
            const auto& vs = pool[part][i].vertices;
            if (std::find(vs.begin(), vs.end(), vertex) != vs.end()) {
                Path p = pool[part][i];
                pool[part].erase(pool[part].begin() + i);
                return p;
            }
        }
        raise_structure("interleave: anchor segment missing");
    };
    Path a_seg = extract_with(pa, a);
    Path b_seg = extract_with(pb, b);
    if (a_seg.back() == a) a_seg = a_seg.reversed();
    if (b_seg.front() == b) b_seg = b_seg.reversed();
    if (a_seg.front() != a || b_seg.back() != b)
        raise_structure("interleave: anchor not a segment endpoint");

    std::vector<int> out;
    for (std::size_t slot = 0; slot < seq.size(); ++slot) {
        Path seg;
        if (slot == 0) {
            seg = a_seg;
        } else if (slot + 1 == seq.size()) {
            seg = b_seg;
        } else {
            seg = pool[seq[slot]].front();
            pool[seq[slot]].erase(pool[seq[slot]].begin());
        }
        out.insert(out.end(), seg.vertices.begin(), seg.vertices.end());
    }
    Path result(out);
    if (!result.verify(g) || result.length() != g.vertex_count() ||
        result.front() != a || result.back() != b)
        raise_structure("interleave: assembled path failed verification");
    return result;
}

// Hamiltonian cycle of a connected non-complete P4-free graph with s(G) <= 0.
inline Cycle join_interleave_cycle(const Graph& g) {
    auto parts_sets = co_components(g);
    auto parts = part_covers(g, parts_sets);
    std::vector<int> ends_bonus(parts.size(), 0);
    balance_counts(parts, ends_bonus, true);
    std::vector<int> counts;
    for (auto& p : parts) counts.push_back(int(p.segments.size()));
    int first = 0;
    for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i] > counts[first]) first = int(i);
    auto seq = arrange_parts(counts, first, -1, true);

    std::vector<std::vector<Path>> pool(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) pool[i] = parts[i].segments;
    std::vector<int> out;
    for (int part : seq) {
        Path seg = pool[part].front();
        pool[part].erase(pool[part].begin());
        out.insert(out.end(), seg.vertices.begin(), seg.vertices.end());
    }
    Cycle c(out);
    if (!c.is_hamiltonian(g)) raise_structure("interleave: assembled cycle failed verification");
    return c;
}

// ---------------------------------------------------------------------------
// The s(G)=0 construction: Hamiltonian (a,b)-paths with respect to a maximum
// scattering set, by removing a minimal element, covering the rest with the
// structured single path, and re-threading the removed vertex.
// ---------------------------------------------------------------------------

// Insert x into a cover path whose non-W stretches are component blocks.
// Tries a same-block slot first, then a slot beside an adjacent W-vertex.
inline Path insert_via_blocks(const Graph& g, const VertexSet& w, int x, const Path& p,
                              const char* claim) {
    const auto& vs = p.vertices;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        if (w.contains(vs[i]) || w.contains(vs[i + 1])) continue;
        if (g.adjacent(x, vs[i]) && g.adjacent(x, vs[i + 1])) {
            std::vector<int> out(vs.begin(), vs.begin() + i + 1);
            out.push_back(x);
            out.insert(out.end(), vs.begin() + i + 1, vs.end());
            return Path(out);
        }
    }
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
        if (!w.contains(vs[i]) || !g.adjacent(x, vs[i])) continue;
        for (int side : {-1, 1}) {
            int z = vs[i + side];
            if (!w.contains(z) && g.adjacent(x, z)) {
                std::size_t cut = side == -1 ? i : i + 1;
                std::vector<int> out(vs.begin(), vs.begin() + cut);
                out.push_back(x);
                out.insert(out.end(), vs.begin() + cut, vs.end());
                return Path(out);
            }
        }
    }
    raise_structure(std::string(claim) + ": no insertion slot for the removed vertex");
}

Path scattering_zero_path(const Graph& g, const VertexSet& w, int a, int b);

// ---------------------------------------------------------------------------
// build_cover: exactly max{1, s} disjoint paths covering V(g), structured as
// a basic cover around cert.witness when s >= 1.
// ---------------------------------------------------------------------------

inline CoverOutcome build_cover(const Graph& g, const ScatteringCertificate& cert,
                                Anchors req) {
    int n = g.vertex_count();
    CoverOutcome out;

    // complete graphs: one path, both anchors placeable
    if (cert.is_minus_infinity()) {
        out.paths.push_back(complete_graph_path(g, req));
        out.a_is_endpoint = true;
        out.ab_single_path = req.a && req.b;
        return out;
    }

    int s = *cert.value;
    const VertexSet& w = *cert.witness;

    auto comps = components(g);
    if (comps.size() >= 2) {
        // cover each component; the anchor constrains only its own component
        out.a_is_endpoint = true;
        for (const auto& comp : comps) {
            auto sub = induced(g, comp);
            VertexSet share = w & comp;
            ScatteringCertificate comp_cert;
            if (share.any()) {
                VertexSet local(sub.graph.vertex_count());
                share.for_each([&](int v) { local.insert(sub.to_child(v)); });
                comp_cert.value = component_count(sub.graph, local) - local.count();
                comp_cert.witness = local;
            } else {
                comp_cert = scattering(sub.graph);
            }
            Anchors sub_req;
            if (req.a && comp.contains(*req.a))
                sub_req.a = sub.to_child(*req.a);
            else if (req.b && comp.contains(*req.b))
                sub_req.a = sub.to_child(*req.b);
            auto sub_out = build_cover(sub.graph, comp_cert, sub_req);
            if (req.a && comp.contains(*req.a) && !sub_out.a_is_endpoint)
                out.a_is_endpoint = false;
            for (auto& p : sub_out.paths) {
                std::vector<int> mapped;
                for (int v : p.vertices) mapped.push_back(sub.to_parent[v]);
                out.paths.emplace_back(mapped);
            }
        }
        return out;
    }

    // connected
    if (s >= 1) {
        // anchor promise applies only when the anchor avoids the scattering set
        std::optional<int> a = req.a;
        if (a && w.contains(*a)) a = std::nullopt;

        auto me = minimal_element(g, w, /*prefer_s_neighbor=*/true);
        int x = me.vertex;
        VertexSet keep = VertexSet::full(n);
        keep.erase(x);
        auto sub = induced(g, keep);
        ScatteringCertificate child;
        child.value = s + 1;
        VertexSet local(sub.graph.vertex_count());
        (w - VertexSet::of(n, {x})).for_each([&](int v) { local.insert(sub.to_child(v)); });
        child.witness = local;
        Anchors child_req;
        if (a) child_req.a = sub.to_child(*a);
        auto child_out = build_cover(sub.graph, child, child_req);

        std::vector<Path> paths;
        for (auto& p : child_out.paths) {
            std::vector<int> mapped;
            for (int v : p.vertices) mapped.push_back(sub.to_parent[v]);
            paths.emplace_back(mapped);
        }
        // link the first two paths through x, keeping the anchor exposed
        if (paths.size() < 2) raise_structure("peel: child cover too small");
        Path p0 = paths[0], p1 = paths[1];
        if (a && p0.back() == *a) p0 = p0.reversed();
        if (a && p1.front() == *a) p1 = p1.reversed();
        if (!g.adjacent(x, p0.back()))
            raise_missing_edge("minimal element complete to the remainder", x, p0.back());
        if (!g.adjacent(x, p1.front()))
            raise_missing_edge("minimal element complete to the remainder", x, p1.front());
        std::vector<int> merged = p0.vertices;
        merged.push_back(x);
        merged.insert(merged.end(), p1.vertices.begin(), p1.vertices.end());
        out.paths.emplace_back(merged);
        for (std::size_t i = 2; i < paths.size(); ++i) out.paths.push_back(paths[i]);
        out.a_is_endpoint = a.has_value() || !req.a;
        return out;
    }

    if (s == 0) {
        VertexSet su(n), sv(n);
        if (is_balanced_complete_bipartite(g, su, sv)) {
            Anchors eff = req;
            out.ab_single_path = true;
            if (eff.a && eff.b) {
                bool opposite = su.contains(*eff.a) != su.contains(*eff.b);
                if (!opposite) {
                    eff.b = std::nullopt;  // same side: only the first anchor binds
                    out.ab_single_path = false;
                }
            } else {
                out.ab_single_path = false;
            }
            out.paths.push_back(balanced_cb_path(su, sv, eff));
            out.a_is_endpoint = true;
            return out;
        }
        // route everything through the scattering-set construction
        int a, b;
        bool promised_pair = false;
        if (req.a && req.b && !(w.contains(*req.a) && w.contains(*req.b))) {
            a = *req.a;
            b = *req.b;
            promised_pair = true;
        } else if (req.a) {
            a = *req.a;
            b = -1;
        } else {
            a = -1;
            b = -1;
        }
        if (a == -1) a = (VertexSet::full(n) - w).first();
        if (b == -1) {
            VertexSet cand = VertexSet::full(n) - w;
            cand.erase(a);
            b = cand.first();
        }
        if (w.contains(a)) std::swap(a, b);
        out.paths.push_back(scattering_zero_path(g, w, a, b));
        if (req.a && out.paths[0].back() == *req.a)
            out.paths[0] = out.paths[0].reversed();
        out.a_is_endpoint = !req.a || out.paths[0].front() == *req.a;
        out.ab_single_path = promised_pair;
        return out;
    }

    // s < 0: Hamiltonian-connected regime
    int a = req.a ? *req.a : 0;
    int b = req.b ? *req.b : (a == 0 ? 1 : 0);
    if (a == b) b = (a == 0 ? 1 : 0);
    out.paths.push_back(join_interleave_path(g, a, b));
    out.a_is_endpoint = true;
    out.ab_single_path = true;
    return out;
}

// Hamiltonian (a,b)-path of a connected P4-free graph with s(G) = 0 that is
// not balanced complete bipartite; w is the maximum scattering set in play
// and a lies outside it.  Mirrors the inductive argument: pull out a minimal
// element x of w (preferring one with a neighbor inside w), cover G - x with
// the structured single path anchored at a, then re-thread x.
inline Path scattering_zero_path(const Graph& g, const VertexSet& w, int a, int b) {
    int n = g.vertex_count();
    if (w.contains(a)) raise_structure("scattering-zero path: first anchor inside the set");
    auto me = minimal_element(g, w, /*prefer_s_neighbor=*/true);
    int x = me.vertex;

    VertexSet keep = VertexSet::full(n);
    keep.erase(x);
    auto sub = induced(g, keep);
    ScatteringCertificate child;
    child.value = 1;
    VertexSet local(sub.graph.vertex_count());
    (w - VertexSet::of(n, {x})).for_each([&](int v) { local.insert(sub.to_child(v)); });
    child.witness = local;

    Anchors child_req;
    child_req.a = sub.to_child(a);
    auto child_out = build_cover(sub.graph, child, child_req);
    if (child_out.paths.size() != 1) raise_structure("scattering-zero: expected one path");
    Path p = child_out.paths[0];
    {
        std::vector<int> mapped;
        for (int v : p.vertices) mapped.push_back(sub.to_parent[v]);
        p = Path(mapped);
    }
    if (p.back() == a) p = p.reversed();
    if (p.front() != a) raise_structure("scattering-zero: anchor lost by the sub-cover");

    VertexSet w_rest = w;
    w_rest.erase(x);

    int tail = p.back();
    if (tail == b) return insert_via_blocks(g, w_rest, x, p, "scattering-zero");
    if (b == x) {
        if (!g.adjacent(x, tail))
            raise_missing_edge("minimal element adjacent to the free endvertex", x, tail);
        std::vector<int> vs = p.vertices;
        vs.push_back(x);
        return Path(vs);
    }

    // b is internal: cut before b, bridge with x or rejoin through the tail
    auto& vs = p.vertices;
    auto itb = std::find(vs.begin(), vs.end(), b);
    if (itb == vs.end()) raise_structure("scattering-zero: second anchor missing");
    std::size_t bi = std::size_t(itb - vs.begin());
    int b1 = vs[bi - 1];
    std::vector<int> head(vs.begin(), vs.begin() + bi);           // a .. b1
    std::vector<int> tail_rev(vs.rbegin(), vs.rbegin() + (vs.size() - bi));  // tail .. b

    if (!w_rest.contains(b1) || g.adjacent(x, b1)) {
        if (!g.adjacent(x, b1))
            raise_missing_edge("minimal element adjacent to the cut vertex", x, b1);
        if (!g.adjacent(x, tail))
            raise_missing_edge("minimal element adjacent to the free endvertex", x, tail);
        std::vector<int> outv = head;
        outv.push_back(x);
        outv.insert(outv.end(), tail_rev.begin(), tail_rev.end());
        return Path(outv);
    }

    // b1 sits in the set and misses x, so b1 is itself a minimal element and
    // reaches the free endvertex; x then goes in as an ordinary insertion
    if (!g.adjacent(b1, tail))
        raise_missing_edge("cut vertex complete to the remainder", b1, tail);
    std::vector<int> outv = head;
    outv.insert(outv.end(), tail_rev.begin(), tail_rev.end());
    return insert_via_blocks(g, w_rest, x, Path(outv), "scattering-zero rejoin");
}

}  // namespace detail_ch

// ---------------------------------------------------------------------------
// Public constructive operations for P4-free graphs.
// ---------------------------------------------------------------------------

namespace detail_ch {

inline void require_p4_free(const Graph& g, const char* op) {
    if (auto wtn = find_induced_p4(g))
        throw MalformedInput(std::string(op) + ": graph has an induced P4 at (" +
                             std::to_string(wtn->vertices[0]) + "," +
                             std::to_string(wtn->vertices[1]) + "," +
                             std::to_string(wtn->vertices[2]) + "," +
                             std::to_string(wtn->vertices[3]) + ")");
}

}  // namespace detail_ch

// Hamiltonian path iff s(G) <= 1; the certificate is the non-existence proof.
inline std::variant<Path, Infeasible> jung_ham_path(const Graph& g) {
    detail_ch::require_p4_free(g, "jung_ham_path");
    auto cert = scattering(g);
    if (cert.value && *cert.value >= 2) return Infeasible{cert};
    auto out = detail_ch::build_cover(g, cert, {});
    if (out.paths.size() != 1 || !out.paths[0].verify(g) ||
        out.paths[0].length() != g.vertex_count())
        raise_structure("jung_ham_path: constructed cover is not a Hamiltonian path");
    return out.paths[0];
}

// Hamiltonian cycle iff s(G) <= 0 and n >= 3.
inline std::variant<Cycle, Infeasible> jung_ham_cycle(const Graph& g) {
    detail_ch::require_p4_free(g, "jung_ham_cycle");
    if (g.vertex_count() < 3) throw MalformedInput("jung_ham_cycle: fewer than 3 vertices");
    auto cert = scattering(g);
    if (cert.value && *cert.value >= 1) return Infeasible{cert};
    Cycle c;
    if (cert.is_minus_infinity()) {
        std::vector<int> vs(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) vs[i] = i;
        c = Cycle(vs);
    } else {
        c = detail_ch::join_interleave_cycle(g);
    }
    if (!c.is_hamiltonian(g)) raise_structure("jung_ham_cycle: verification failed");
    return c;
}

// Hamiltonian (u,v)-path under the uniform guarantee s(G) < 0.
inline std::variant<Path, Infeasible> jung_ham_connected(const Graph& g, int u, int v) {
    detail_ch::require_p4_free(g, "jung_ham_connected");
    if (u == v || u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw MalformedInput("jung_ham_connected: bad endpoint pair");
    auto cert = scattering(g);
    if (cert.value && *cert.value >= 0) return Infeasible{cert};
    Path p;
    if (cert.is_minus_infinity())
        p = detail_ch::complete_graph_path(g, {u, v});
    else
        p = detail_ch::join_interleave_path(g, u, v);
    if (!p.verify(g) || p.length() != g.vertex_count() || p.front() != u || p.back() != v)
        raise_structure("jung_ham_connected: verification failed");
    return p;
}

// Cover by max{1, s(G)} disjoint paths with the endvertex promises: v1 ends a
// path when v1 avoids the scattering set or s(G) <= 0; a single (v1,v2)-path
// when s(G) < 0.
inline PathCoverResult jung_path_cover(const Graph& g, std::optional<int> v1 = std::nullopt,
                                       std::optional<int> v2 = std::nullopt) {
    detail_ch::require_p4_free(g, "jung_path_cover");
    if (v1 && v2 && *v1 == *v2) throw MalformedInput("jung_path_cover: equal anchors");
    auto cert = scattering(g);
    auto out = detail_ch::build_cover(g, cert, {v1, v2});

    PathCoverResult res;
    res.paths = out.paths;
    res.scattering_set = cert.witness ? *cert.witness : VertexSet(g.vertex_count());
    int expect = cert.value ? std::max(1, *cert.value) : 1;
    if (int(res.paths.size()) != expect)
        raise_structure("jung_path_cover: wrong number of paths");
    VertexSet covered(g.vertex_count());
    for (const auto& p : res.paths) {
        if (!p.verify(g)) raise_structure("jung_path_cover: invalid path");
        for (int v : p.vertices) {
            if (covered.contains(v)) raise_structure("jung_path_cover: overlap");
            covered.insert(v);
        }
    }
    if (covered != VertexSet::full(g.vertex_count()))
        raise_structure("jung_path_cover: not a cover");
    if (v1)
        for (const auto& p : res.paths)
            if (p.front() == *v1 || p.back() == *v1) res.v1_honored = true;
    if (v1 && v2 && res.paths.size() == 1) {
        const auto& p = res.paths[0];
        res.v2_honored = (p.front() == *v1 && p.back() == *v2) ||
                         (p.front() == *v2 && p.back() == *v1);
    }
    return res;
}

// Hamiltonian (u,v)-path of a P4-free graph with s(G) = 0 with respect to the
// given maximum scattering set: at most one endpoint may lie inside it.
inline Path ham_connected_wrt(const Graph& g, const VertexSet& s, int u, int v) {
    auto precondition = [&](bool ok, const std::string& what) {
        if (!ok) {
            HypothesisViolation hv;
            hv.kind = ViolationKind::BadStructure;
            hv.claim = "ham_connected_wrt precondition: " + what;
            hv.witness_set = s;
            throw HypothesisError(std::move(hv));
        }
    };
    precondition(u != v && u >= 0 && v >= 0 && u < g.vertex_count() && v < g.vertex_count(),
                 "distinct in-range endpoints");
    precondition(is_p4_free(g), "P4-free input");
    auto cert = scattering(g);
    precondition(cert.value && *cert.value == 0, "s(G) = 0");
    precondition(is_cutset(g, s) &&
                     component_count(g, s) - s.count() == 0 &&
                     s.count() == cert.witness->count(),
                 "maximum scattering set");
    VertexSet su(g.vertex_count()), sv(g.vertex_count());
    precondition(!detail_ch::is_balanced_complete_bipartite(g, su, sv),
                 "not balanced complete bipartite");
    precondition(!(s.contains(u) && s.contains(v)), "at most one endpoint in S");

    int a = u, b = v;
    bool swapped = false;
    if (s.contains(a)) {
        std::swap(a, b);
        swapped = true;
    }
    Path p = detail_ch::scattering_zero_path(g, s, a, b);
    if (swapped) p = p.reversed();
    if (!p.verify(g) || p.length() != g.vertex_count() || p.front() != u || p.back() != v)
        raise_structure("ham_connected_wrt: verification failed");
    return p;
}

// ---------------------------------------------------------------------------
// Structural validation of basic path covers (shared with the test suites).
// Blocks are components of g - w; every block is one contiguous stretch of
// one path, scattering vertices sit strictly inside paths between blocks.
// ---------------------------------------------------------------------------

inline std::optional<std::string> check_basic_cover(const Graph& g, const VertexSet& w,
                                                    const std::vector<Path>& paths,
                                                    std::optional<int> expected_count) {
    if (expected_count && int(paths.size()) != *expected_count)
        return "wrong path count";
    VertexSet covered(g.vertex_count());
    for (const auto& p : paths) {
        if (!p.verify(g)) return "invalid path";
        for (int v : p.vertices) {
            if (covered.contains(v)) return "overlapping paths";
            covered.insert(v);
        }
    }
    if (covered != VertexSet::full(g.vertex_count())) return "not covering";

    auto comps = components(g, w);
    std::vector<int> comp_of(g.vertex_count(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i)
        comps[i].for_each([&](int v) { comp_of[v] = int(i); });

    std::vector<int> seen_comp(comps.size(), 0);
    for (const auto& p : paths) {
        int w_count = 0, blocks = 0;
        int prev_comp = -2;
        for (std::size_t i = 0; i < p.vertices.size(); ++i) {
            int v = p.vertices[i];
            if (w.contains(v)) {
                if (i == 0 || i + 1 == p.vertices.size())
                    return "scattering vertex at a path end";
                if (w.contains(p.vertices[i - 1])) return "adjacent scattering vertices";
                ++w_count;
                prev_comp = -2;
            } else {
                int c = comp_of[v];
                if (c != prev_comp) {
                    ++blocks;
                    if (seen_comp[c]++) return "component split across blocks";
                    prev_comp = c;
                }
            }
        }
        if (blocks != w_count + 1) return "block/link count mismatch";
    }
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!seen_comp[i]) return "component missing";
    return std::nullopt;
}

}  // namespace toughham
