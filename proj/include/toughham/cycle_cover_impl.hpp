#pragma once

// Implementation of cycle_covering_complement: path segments over the
// components of g - s are stitched into a single cycle (and a single
// s-matched path) through the endpoint graph when there are many segments,
// or by direct surgery when two or three remain.  Declared in
// cycle_builder.hpp.

#include <algorithm>
#include <map>

#include "toughham/cycle_builder.hpp"

namespace toughham {

namespace detail_cb {

struct SegmentState {
    std::vector<Path> paths;            // s-matched, one component each
    std::vector<int> comp_of;           // path index -> component index
    std::vector<int> z_of;              // component -> chosen vertex or -1
    std::vector<VertexSet> comp_sets;   // component vertex sets (g ids)
    std::vector<VertexSet> comp_scats;  // component scattering witnesses (g ids)
    VertexSet zset;
};

inline int second_of(const Path& p) { return p.vertices[1]; }
inline int penultimate_of(const Path& p) { return p.vertices[p.length() - 2]; }

// every endpoint-s-vertex of the listed paths must reach all of the given
// component completely
inline void check_complete_to(const Graph& g, int vertex, const VertexSet& comp,
                              const char* claim) {
    VertexSet missing = comp - g.neighbors(vertex);
    if (missing.any()) raise_missing_edge(claim, vertex, missing.first());
}

// Expand an endpoint-graph traversal (sequence of aux ids, pair edges in
// consecutive positions 2j, 2j+1) into a vertex sequence of g.  At each
// junction one of the two touching s-endpoints is bypassed through the
// other's partner.
inline std::vector<int> expand_aux(const Graph& g, const AuxEndpointGraph& aux,
                                   const std::vector<Path>& paths,
                                   std::vector<int> aux_seq, bool cyclic) {
    int m = int(aux_seq.size());
    if (m % 2 != 0) raise_structure("aux expansion: odd traversal");
    int blocks = m / 2;
    std::vector<char> drop_entry(blocks, 0), drop_exit(blocks, 0);
    auto entry_of = [&](int b) { return aux_seq[2 * b]; };
    auto exit_of = [&](int b) { return aux_seq[2 * b + 1]; };
    for (int b = 0; b < blocks; ++b)
        if (entry_of(b) / 2 != exit_of(b) / 2)
            raise_structure("aux expansion: pair edge not consecutive");

    int junctions = cyclic ? blocks : blocks - 1;
    for (int j = 0; j < junctions; ++j) {
        int from = exit_of(j), to = entry_of((j + 1) % blocks);
        if (g.adjacent(aux.endpoint[from], aux.partner[to])) {
            drop_entry[(j + 1) % blocks] = 1;
        } else if (g.adjacent(aux.endpoint[to], aux.partner[from])) {
            drop_exit[j] = 1;
        } else {
            raise_missing_edge("aux junction without a bridging edge", aux.endpoint[from],
                              aux.partner[to]);
        }
    }

    std::vector<int> out;
    for (int b = 0; b < blocks; ++b) {
        Path p = paths[entry_of(b) / 2];
        if (entry_of(b) % 2 == 1) p = p.reversed();
        auto first = p.vertices.begin() + (drop_entry[b] ? 1 : 0);
        auto last = p.vertices.end() - (drop_exit[b] ? 1 : 0);
        out.insert(out.end(), first, last);
    }
    return out;
}

// ladder of attempts to produce the covering cycle and path through the
// endpoint graph
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> aux_route(
    const Graph& g, const AuxEndpointGraph& aux, const std::vector<Path>& paths,
    bool& exhausted) {
    auto r = cycle_through_edges(aux.h, aux.pairs);
    if (r.exhausted) {
        exhausted = true;
        return std::nullopt;
    }
    if (!r.cycle) {
        // four segments may sit around an explicit four-vertex cut: two pairs
        // inside, two pairs as the separated sides, giving the eight-vertex
        // ring directly
        int k = int(paths.size());
        if (k == 4) {
            for (int c = 0; c < k; ++c)
                for (int d = c + 1; d < k; ++d) {
                    bool disconnected = true;
                    for (int a : {2 * c, 2 * c + 1})
                        for (int b : {2 * d, 2 * d + 1})
                            if (aux.h.adjacent(a, b)) disconnected = false;
                    if (!disconnected) continue;
                    std::vector<int> rest;
                    for (int i = 0; i < k; ++i)
                        if (i != c && i != d) rest.push_back(i);
                    std::vector<int> seq = {2 * rest[0],     2 * rest[0] + 1, 2 * c,
                                            2 * c + 1,       2 * rest[1],     2 * rest[1] + 1,
                                            2 * d,           2 * d + 1};
                    bool ok = true;
                    for (int i = 0; i < 8; ++i)
                        if (!aux.h.adjacent(seq[i], seq[(i + 1) % 8])) ok = false;
                    if (ok) {
                        std::vector<int> path_seq = seq;  // drop the wrap junction
                        return std::make_pair(seq, path_seq);
                    }
                }
        }
        return std::nullopt;
    }
    // rotate so a pair edge opens the traversal
    std::vector<int> seq = r.cycle->vertices;
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i] / 2 == seq[(i + 1) % seq.size()] / 2) {
            std::rotate(seq.begin(), seq.begin() + i, seq.end());
            break;
        }
    (void)g;
    return std::make_pair(seq, seq);
}

inline std::optional<std::pair<VertexSet, VertexSet>> balanced_sides(const Graph& g,
                                                                     const VertexSet& comp) {
    auto sub = induced(g, comp);
    VertexSet su(sub.graph.vertex_count()), sv(sub.graph.vertex_count());
    if (!detail_ch::is_balanced_complete_bipartite(sub.graph, su, sv)) return std::nullopt;
    VertexSet a(g.vertex_count()), b(g.vertex_count());
    su.for_each([&](int v) { a.insert(sub.to_parent[v]); });
    sv.for_each([&](int v) { b.insert(sub.to_parent[v]); });
    return std::make_pair(a, b);
}

// Traversal of one component from an interior entry w to the partner end v,
// carrying the component's removed scattering element when it can sit next
// to its path neighbours; otherwise the caller's later insertion pass takes
// it.  `body` is the stripped path over the component, oriented u..v.
inline std::vector<int> rethreaded_traversal(const Graph& g, const std::vector<int>& body,
                                             int w, int z, bool& z_placed) {
    z_placed = false;
    if (w == body.front()) return body;  // u..v as it stands
    auto it = std::find(body.begin(), body.end(), w);
    if (it == body.end()) raise_structure("surgery: entry vertex missing from the segment");
    std::size_t idx = std::size_t(it - body.begin());
    if (idx + 1 >= body.size())
        raise_structure("surgery: entry vertex unexpectedly at the partner end");
    int wp = body[idx + 1];
    std::vector<int> out;
    if (z >= 0 && g.adjacent(z, wp)) {
        // w .. u backwards, z, w+ .. v forwards
        for (std::size_t i = idx + 1; i-- > 0;) out.push_back(body[i]);
        if (!g.adjacent(z, body.front()))
            raise_missing_edge("surgery: scattering element misses the segment end", z,
                               body.front());
        out.push_back(z);
        for (std::size_t i = idx + 1; i < body.size(); ++i) out.push_back(body[i]);
        z_placed = true;
        return out;
    }
    // w .. u backwards, then w+ .. v forwards through the double jump
    if (!g.adjacent(body.front(), wp))
        raise_missing_edge("surgery: double jump edge missing", body.front(), wp);
    for (std::size_t i = idx + 1; i-- > 0;) out.push_back(body[i]);
    for (std::size_t i = idx + 1; i < body.size(); ++i) out.push_back(body[i]);
    return out;
}

// k = 2 segments over two components: orientation search for entry vertices
// on both sides, the direct shapes when none exists, and the re-threading of
// the removed elements.
inline std::pair<std::vector<int>, std::vector<int>> two_segment_surgery(
    const Graph& g, const VertexSet& s, SegmentState& st,
    std::vector<std::string>& transcript) {
    (void)s;
    int pm[2] = {-1, -1};
    for (std::size_t p = 0; p < st.paths.size(); ++p)
        for (int i = 0; i < 2; ++i)
            if (st.comp_sets[i].contains(st.paths[p].vertices[1])) pm[i] = int(p);
    if (pm[0] < 0 || pm[1] < 0) raise_structure("surgery: segment alignment failed");

    // a component whose removed element already sits on its path closes the
    // ring directly through the complete endpoints
    for (int i = 0; i < 2; ++i) {
        int z = st.z_of[i];
        const auto& own = st.paths[pm[i]].vertices;
        if (z < 0 || std::find(own.begin(), own.end(), z) == own.end()) continue;
        const Path& pa = st.paths[pm[i]];
        const Path& pb = st.paths[pm[1 - i]];
        check_complete_to(g, pa.front(), st.comp_sets[1 - i],
                          "ring endpoint complete to the far component");
        check_complete_to(g, pa.back(), st.comp_sets[1 - i],
                          "ring endpoint complete to the far component");
        std::vector<int> cyc = pa.vertices;
        cyc.insert(cyc.end(), pb.vertices.begin() + 1, pb.vertices.end() - 1);
        std::vector<int> path = pa.vertices;
        path.insert(path.end(), pb.vertices.begin() + 1, pb.vertices.end());
        transcript.push_back("two segments: placed element closes the ring");
        return {cyc, path};
    }

    auto good_entry = [&](const Path& from, const Path& to, int to_comp) -> std::optional<int> {
        int v2 = penultimate_of(to);
        VertexSet cand = neighbors_in(g, from.back(), st.comp_sets[to_comp]);
        cand.erase(v2);
        auto sides = balanced_sides(g, st.comp_sets[to_comp]);
        for (int w = cand.first(); w != -1; w = cand.next_after(w)) {
            if (sides) {
                bool wu = sides->first.contains(w), vu = sides->first.contains(v2);
                if (wu == vu) continue;
            }
            return w;
        }
        return std::nullopt;
    };

    for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
            Path p1 = o1 ? st.paths[pm[0]].reversed() : st.paths[pm[0]];
            Path p2 = o2 ? st.paths[pm[1]].reversed() : st.paths[pm[1]];
            auto w2 = good_entry(p1, p2, 1);
            auto w1 = good_entry(p2, p1, 0);
            if (!w2 || !w1) continue;

            std::vector<int> body1(p1.vertices.begin() + 1, p1.vertices.end() - 1);
            std::vector<int> body2(p2.vertices.begin() + 1, p2.vertices.end() - 1);
            auto build_t = [&](int comp, const std::vector<int>& body, int w) {
                int z = st.z_of[comp];
                if (z < 0) {
                    Path r = detail_pc::component_pair_path(g, st.comp_sets[comp], w,
                                                            body.back());
                    return r.vertices;
                }
                bool placed = false;
                return rethreaded_traversal(g, body, w, z, placed);
            };
            auto t1 = build_t(0, body1, *w1);
            auto t2 = build_t(1, body2, *w2);

            std::vector<int> cyc = t1;
            cyc.push_back(p1.back());
            cyc.insert(cyc.end(), t2.begin(), t2.end());
            cyc.push_back(p2.back());

            // the path keeps the first segment whole; its element re-threads later
            std::vector<int> path;
            {
                // rebuild the first side fresh so the path and cycle stay aligned
                std::vector<int> t2p = t2;
                path = p1.vertices;
                path.insert(path.end(), t2p.begin(), t2p.end());
                path.push_back(p2.back());
            }
            transcript.push_back("two segments: threaded through both entry vertices");
            return {cyc, path};
        }

    // no orientation offers both entries: the direct shapes
    for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
            Path p1 = o1 ? st.paths[pm[0]].reversed() : st.paths[pm[0]];
            Path p2 = o2 ? st.paths[pm[1]].reversed() : st.paths[pm[1]];
            VertexSet cand = neighbors_in(g, p1.front(), st.comp_sets[1]);
            if (!cand.any()) continue;
            int w = cand.first();
            std::vector<int> body2(p2.vertices.begin() + 1, p2.vertices.end() - 1);
            auto sides = balanced_sides(g, st.comp_sets[1]);
            if (w == body2.front()) {
                // ring: first path, far segment reversed, closed at the front
                std::vector<int> rev(body2.rbegin(), body2.rend());
                int entry = rev.front();  // v2
                if (!g.adjacent(p1.back(), entry)) {
                    if (!sides) continue;
                    // swap to a same-side entry the back end does reach
                    VertexSet era = neighbors_in(g, p1.back(), st.comp_sets[1]);
                    int alt = -1;
                    for (int e = era.first(); e != -1; e = era.next_after(e))
                        if (sides->first.contains(e) == sides->first.contains(entry)) alt = e;
                    if (alt == -1) continue;
                    Path r = detail_pc::component_pair_path(g, st.comp_sets[1], alt, w);
                    std::vector<int> cyc = p1.vertices;
                    cyc.insert(cyc.end(), r.vertices.begin(), r.vertices.end());
                    std::vector<int> path = p1.vertices;
                    path.insert(path.end(), r.vertices.begin(), r.vertices.end());
                    path.push_back(p2.front());
                    transcript.push_back("two segments: front-ring with side-matched entry");
                    return {cyc, path};
                }
                std::vector<int> cyc = p1.vertices;
                cyc.insert(cyc.end(), rev.begin(), rev.end());
                std::vector<int> path = cyc;
                path.push_back(p2.front());
                transcript.push_back("two segments: front-ring through the near partner");
                return {cyc, path};
            }
            if (sides && (sides->first.contains(w) == sides->first.contains(body2.front()))) {
                Path r = detail_pc::component_pair_path(g, st.comp_sets[1], w, body2.back());
                // path: reversed first segment, then across
                Path p1r = p1.reversed();
                std::vector<int> path = p1r.vertices;
                path.insert(path.end(), r.vertices.begin(), r.vertices.end());
                path.push_back(p2.back());
                // ring: first segment forward, far side walked back to w
                std::vector<int> cyc;
                if (g.adjacent(p1.back(), body2.back())) {
                    cyc = p1.vertices;
                    std::vector<int> rrev(r.vertices.rbegin(), r.vertices.rend());
                    cyc.insert(cyc.end(), rrev.begin(), rrev.end());
                } else {
                    VertexSet era = neighbors_in(g, p1.back(), st.comp_sets[1]);
                    int alt = -1;
                    for (int e = era.first(); e != -1; e = era.next_after(e))
                        if (sides->first.contains(e) != sides->first.contains(w)) alt = e;
                    if (alt == -1) continue;
                    Path r2 = detail_pc::component_pair_path(g, st.comp_sets[1], alt, w);
                    cyc = p1.vertices;
                    cyc.insert(cyc.end(), r2.vertices.begin(), r2.vertices.end());
                }
                transcript.push_back("two segments: balanced far side, side-matched walk");
                return {cyc, path};
            }
        }
    raise_structure("two-segment surgery found no assembly");
}

// k = 3 segments over three components.
inline std::pair<std::vector<int>, std::vector<int>> three_segment_surgery(
    const Graph& g, const VertexSet& s, SegmentState& st,
    std::vector<std::string>& transcript) {
    (void)s;
    int pm[3] = {-1, -1, -1};
    for (std::size_t p = 0; p < st.paths.size(); ++p)
        for (int i = 0; i < 3; ++i)
            if (st.comp_sets[i].contains(st.paths[p].vertices[1])) pm[i] = int(p);
    if (pm[0] < 0 || pm[1] < 0 || pm[2] < 0)
        raise_structure("surgery: segment alignment failed");

    auto endpoint = [&](const Path& p, int side) { return side ? p.back() : p.front(); };
    auto partner = [&](const Path& p, int side) {
        return side ? penultimate_of(p) : second_of(p);
    };
    auto aux_edge = [&](const Path& a, int sa, const Path& b, int sb) {
        return g.adjacent(endpoint(a, sa), partner(b, sb)) ||
               g.adjacent(endpoint(b, sb), partner(a, sa));
    };

    for (int ca = 0; ca < 3; ++ca)
        for (int cb = 0; cb < 3; ++cb) {
            if (ca == cb) continue;
            const Path& pa = st.paths[pm[ca]];
            const Path& pb = st.paths[pm[cb]];
            for (int side = 0; side < 2; ++side) {
                if (aux_edge(pa, side, pb, 0) || aux_edge(pa, side, pb, 1)) continue;
                // the opposite end must also miss both, else routing succeeded
                if (aux_edge(pa, 1 - side, pb, 0) || aux_edge(pa, 1 - side, pb, 1)) continue;

                int cc = 3 - ca - cb;
                Path p1 = side ? pa.reversed() : pa;  // x1 is the blocked end
                Path p2 = pb;
                Path p3 = st.paths[pm[cc]];
                const VertexSet& d2 = st.comp_sets[cb];
                const VertexSet& d3 = st.comp_sets[cc];

                for (int e : {p1.front(), p2.front(), p2.back(), p1.back()})
                    check_complete_to(g, e, d3, "blocked endpoints complete to the third");

                VertexSet cand = neighbors_in(g, p1.back(), d2);
                if (!cand.any())
                    raise_missing_edge("minimal cutset endpoint reaches the second component",
                                       p1.back(), d2.first());
                int w2 = cand.first();

                std::vector<int> t2;  // traversal of d2, ending with its exit s-vertex
                std::vector<int> body2(p2.vertices.begin() + 1, p2.vertices.end() - 1);
                int z2 = st.z_of[cb];
                auto sides2 = balanced_sides(g, d2);
                if (w2 == body2.front() || w2 == body2.back()) {
                    if (w2 == body2.back()) {
                        p2 = p2.reversed();
                        body2.assign(p2.vertices.begin() + 1, p2.vertices.end() - 1);
                    }
                    t2 = body2;
                    t2.push_back(p2.back());
                } else {
                    auto sc2 = scattering_within(g, d2);
                    if (!sc2.value || *sc2.value <= -1) {
                        Path r = detail_pc::component_pair_path(g, d2, w2, body2.back());
                        t2 = r.vertices;
                        t2.push_back(p2.back());
                    } else if (sides2) {
                        int target = body2.back();
                        if (sides2->first.contains(w2) == sides2->first.contains(target)) {
                            p2 = p2.reversed();
                            body2.assign(p2.vertices.begin() + 1, p2.vertices.end() - 1);
                            target = body2.back();
                        }
                        Path r = detail_pc::component_pair_path(g, d2, w2, target);
                        t2 = r.vertices;
                        t2.push_back(p2.back());
                    } else {
                        if (z2 < 0) raise_structure("second component lost its element");
                        if (w2 == z2) {
                            if (!g.adjacent(z2, body2.front()))
                                raise_missing_edge("element beside the partner", z2,
                                                   body2.front());
                            t2.push_back(z2);
                            t2.insert(t2.end(), body2.begin(), body2.end());
                            t2.push_back(p2.back());
                        } else {
                            // orient so the element can follow the entry when possible
                            auto it = std::find(body2.begin(), body2.end(), w2);
                            std::size_t idx = std::size_t(it - body2.begin());
                            bool fwd_ok = idx + 1 < body2.size() &&
                                          g.adjacent(z2, body2[idx + 1]);
                            bool bwd_ok = idx > 0 && g.adjacent(z2, body2[idx - 1]);
                            if (!fwd_ok && bwd_ok) {
                                p2 = p2.reversed();
                                body2.assign(p2.vertices.begin() + 1, p2.vertices.end() - 1);
                            }
                            bool placed = false;
                            t2 = rethreaded_traversal(g, body2, w2, z2, placed);
                            t2.push_back(p2.back());  // the traversal ends at the partner
                        }
                    }
                }

                std::vector<int> body3(p3.vertices.begin() + 1, p3.vertices.end() - 1);
                int exit2 = t2.back();
                if (!g.adjacent(exit2, body3.front()))
                    raise_missing_edge("exit endpoint reaches the third component", exit2,
                                       body3.front());
                if (!g.adjacent(body3.back(), p1.front()))
                    raise_missing_edge("third component closes to the blocked end",
                                       body3.back(), p1.front());

                std::vector<int> cyc = p1.vertices;
                cyc.insert(cyc.end(), t2.begin(), t2.end());
                cyc.insert(cyc.end(), body3.begin(), body3.end());

                std::vector<int> path = p1.vertices;
                path.insert(path.end(), t2.begin(), t2.end());
                path.insert(path.end(), body3.begin(), body3.end());
                path.push_back(p3.back());
                if (!g.adjacent(body3.back(), p3.back()))
                    raise_missing_edge("third segment keeps its own end", body3.back(),
                                       p3.back());
                transcript.push_back("three segments: surgery around the blocked pair");
                return {cyc, path};
            }
        }
    raise_structure("three-segment surgery found no blocked configuration");
}

}  // namespace detail_cb

inline CycleCoverResult cycle_covering_complement(const Graph& g, const VertexSet& s) {
    using namespace detail_cb;
    int n = g.vertex_count();
    std::vector<std::string> transcript;
    if (!is_minimal_cutset(g, s))
        throw MalformedInput("cycle_covering_complement: s is not a minimal cutset");
    detail_pc::check_freeness(g, s);
    detail_pc::check_wrt_hypothesis(g, s, Rational(9, 2));

    auto comps = components(g, s);
    int ell = int(comps.size());

    SegmentState st;
    st.comp_sets = comps;
    st.z_of.assign(ell, -1);
    st.zset = VertexSet(n);
    st.comp_scats.assign(ell, VertexSet(n));
    for (int i = 0; i < ell; ++i) {
        auto sub = induced(g, comps[i]);
        auto sc = scattering(sub.graph);
        if (!sc.value) continue;  // complete component scatters nowhere
        VertexSet w(n);
        sc.witness->for_each([&](int v) { w.insert(sub.to_parent[v]); });
        st.comp_scats[i] = w;
        if (ell <= 3 && *sc.value >= 0) {
            VertexSet su(sub.graph.vertex_count()), sv(sub.graph.vertex_count());
            if (detail_ch::is_balanced_complete_bipartite(sub.graph, su, sv)) continue;
            auto me = minimal_element(sub.graph, *sc.witness);
            st.z_of[i] = sub.to_parent[me.vertex];
            st.zset.insert(st.z_of[i]);
        }
    }
    if (st.zset.any())
        transcript.push_back("removed scattering elements: " + st.zset.to_string());

    // cover of g - zset - s, merged only inside components so every path
    // stays within one component
    VertexSet keep = VertexSet::full(n) - st.zset;
    auto gz = induced(g, keep);
    VertexSet s_local(gz.graph.vertex_count());
    s.for_each([&](int v) { s_local.insert(gz.to_child(v)); });
    {
        int reduced = gz.graph.vertex_count() -
                      detail::universal_vertices(gz.graph).count();
        if (reduced <= config().enumeration_cap)
            if (auto v = is_t_tough_wrt(gz.graph, s_local, Rational(4)))
                throw HypothesisError(std::move(*v));
    }
    auto inner = s_matched_basic_cover(gz.graph, s_local);
    for (const auto& p : inner.paths) {
        std::vector<int> mapped;
        for (int v : p.vertices) mapped.push_back(gz.to_parent[v]);
        st.paths.emplace_back(mapped);
    }
    auto comp_index = [&](const Path& p) {
        for (int i = 0; i < ell; ++i)
            if (comps[i].contains(p.vertices[1])) return i;
        raise_structure("cover path outside every component");
    };
    // merge within components until each is covered by at most two paths
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < st.paths.size() && !merged; ++i)
            for (std::size_t j = 0; j < st.paths.size() && !merged; ++j) {
                if (i == j || comp_index(st.paths[i]) != comp_index(st.paths[j])) continue;
                for (const Path& a : {st.paths[i], st.paths[i].reversed()}) {
                    for (const Path& b : {st.paths[j], st.paths[j].reversed()}) {
                        if (!g.adjacent(a.back(), second_of(b))) continue;
                        std::vector<int> m = a.vertices;
                        m.insert(m.end(), b.vertices.begin() + 1, b.vertices.end());
                        std::vector<Path> next;
                        for (std::size_t q = 0; q < st.paths.size(); ++q)
                            if (q != i && q != j) next.push_back(st.paths[q]);
                        next.emplace_back(m);
                        st.paths = std::move(next);
                        merged = true;
                        break;
                    }
                    if (merged) break;
                }
            }
    }

    // per-component counts and the z-linking of split components
    for (int i = 0; i < ell; ++i) {
        std::vector<std::size_t> touching;
        for (std::size_t p = 0; p < st.paths.size(); ++p)
            if (comp_index(st.paths[p]) == i) touching.push_back(p);
        if (touching.size() > 2) {
            HypothesisViolation v;
            v.kind = ViolationKind::BadStructure;
            v.claim = "component split across more than two cover paths";
            v.witness_set = comps[i];
            throw HypothesisError(std::move(v));
        }
        if (touching.size() == 2) {
            int z = st.z_of[i];
            if (z == -1)
                raise_structure("split component without a removed scattering element");
            const Path& ph = st.paths[touching[0]];
            const Path& pp = st.paths[touching[1]];
            // endpoints of both halves reach every other component completely
            for (const Path* q : {&ph, &pp})
                for (int e : {q->front(), q->back()})
                    for (int j = 0; j < ell; ++j)
                        if (j != i)
                            check_complete_to(g, e, comps[j],
                                              "split-component endpoint complete elsewhere");
            int vh = penultimate_of(ph), up = second_of(pp);
            if (!g.adjacent(z, vh)) raise_missing_edge("z reaches the first half", z, vh);
            if (!g.adjacent(z, up)) raise_missing_edge("z reaches the second half", z, up);
            std::vector<int> m(ph.vertices.begin(), ph.vertices.end() - 1);
            m.push_back(z);
            m.insert(m.end(), pp.vertices.begin() + 1, pp.vertices.end());
            std::vector<Path> next;
            for (std::size_t q = 0; q < st.paths.size(); ++q)
                if (q != touching[0] && q != touching[1]) next.push_back(st.paths[q]);
            next.emplace_back(m);
            st.paths = std::move(next);
            transcript.push_back("linked a split component through its scattering element");
        }
    }

    int k = int(st.paths.size());
    if (k < 2) raise_structure("cover collapsed below two segments");
    auto aux = AuxEndpointGraph::build(g, st.paths);
    if (auto v = aux.check_degree_claim()) throw HypothesisError(std::move(*v));

    std::vector<int> cycle_seq, path_seq;

    bool exhausted = false;
    auto routed = aux_route(g, aux, st.paths, exhausted);
    if (exhausted) throw SearchExhaustedError("endpoint-graph routing budget exhausted");
    if (routed) {
        cycle_seq = expand_aux(g, aux, st.paths, routed->first, true);
        path_seq = expand_aux(g, aux, st.paths, routed->second, false);
        transcript.push_back("routed through the endpoint graph over " + std::to_string(k) +
                             " segments");
    } else if (k == 2) {
        // two segments: direct surgery
        std::tie(cycle_seq, path_seq) = detail_cb::two_segment_surgery(g, s, st, transcript);
    } else if (k == 3) {
        std::tie(cycle_seq, path_seq) = detail_cb::three_segment_surgery(g, s, st, transcript);
    } else {
        raise_structure("endpoint graph lacks the promised routing cycle");
    }

    // re-thread the removed scattering elements still outside
    for (int i = 0; i < ell; ++i) {
        int z = st.z_of[i];
        if (z < 0) continue;
        if (std::find(cycle_seq.begin(), cycle_seq.end(), z) == cycle_seq.end())
            cycle_seq = insert_into_sequence(g, cycle_seq, z, comps[i], st.comp_scats[i], true);
        if (std::find(path_seq.begin(), path_seq.end(), z) == path_seq.end())
            path_seq = insert_into_sequence(g, path_seq, z, comps[i], st.comp_scats[i], false);
    }

    CycleCoverResult out;
    out.cycle = Cycle(cycle_seq);
    out.transcript = transcript;
    if (!out.cycle.verify(g)) raise_structure("covering cycle failed verification");
    VertexSet covered = out.cycle.vertex_set(n);
    if (!(VertexSet::full(n) - s).is_subset_of(covered))
        raise_structure("covering cycle misses a vertex outside s");

    out.single_path.paths = {Path(path_seq)};
    out.single_path.host_set = s;
    out.single_path.target = VertexSet::full(n) - s;
    out.single_path.scattering_set = VertexSet(n);
    out.single_path.basic = false;
    if (auto err = validate_s_matched_cover(g, out.single_path, false, std::nullopt))
        raise_structure("covering path invalid: " + *err);
    return out;
}

}  // namespace toughham
