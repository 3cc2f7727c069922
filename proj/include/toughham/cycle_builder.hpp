#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toughham/cograph_ham.hpp"
#include "toughham/connectivity.hpp"
#include "toughham/cycle_search.hpp"
#include "toughham/freeness.hpp"
#include "toughham/graph.hpp"
#include "toughham/matchings.hpp"
#include "toughham/path_covers.hpp"

namespace toughham {

struct HamiltonianCertificate {
    Cycle cycle;
    std::vector<std::string> transcript;

    bool verify(const Graph& g) const { return cycle.is_hamiltonian(g); }
};

// Endpoint graph over the cover paths: one vertex per path end, its pair
// edge, and a cross edge wherever an end reaches the other end's partner.
struct AuxEndpointGraph {
    Graph h;                                  // 2k vertices: 2i, 2i+1 for path i
    std::vector<std::pair<int, int>> pairs;   // the mandatory edges (2i, 2i+1)
    std::vector<int> endpoint;                // aux id -> vertex of g
    std::vector<int> partner;                 // aux id -> its partner in the path

    static AuxEndpointGraph build(const Graph& g, const std::vector<Path>& paths) {
        AuxEndpointGraph out;
        int k = int(paths.size());
        out.endpoint.resize(2 * k);
        out.partner.resize(2 * k);
        for (int i = 0; i < k; ++i) {
            const auto& p = paths[i];
            out.endpoint[2 * i] = p.front();
            out.endpoint[2 * i + 1] = p.back();
            out.partner[2 * i] = p.vertices[1];
            out.partner[2 * i + 1] = p.vertices[p.length() - 2];
            out.pairs.emplace_back(2 * i, 2 * i + 1);
        }
        std::vector<std::pair<int, int>> edges = out.pairs;
        for (int a = 0; a < 2 * k; ++a)
            for (int b = a + 1; b < 2 * k; ++b) {
                if (a / 2 == b / 2) continue;
                if (g.adjacent(out.endpoint[a], out.partner[b]) ||
                    g.adjacent(out.endpoint[b], out.partner[a]))
                    edges.emplace_back(a, b);
            }
        out.h = Graph::from_edges(2 * k, edges);
        return out;
    }

    // the degree floor 2k-3, and bound-attainers missing exactly one pair
    std::optional<HypothesisViolation> check_degree_claim() const {
        int k2 = h.vertex_count();
        for (int v = 0; v < k2; ++v) {
            if (h.degree(v) < k2 - 3) {
                HypothesisViolation hv;
                hv.kind = ViolationKind::DegreeThreshold;
                hv.claim = "endpoint graph vertex below the degree floor";
                hv.witness_set = VertexSet::of(k2, {v});
                return hv;
            }
            if (h.degree(v) == k2 - 3) {
                VertexSet non = h.neighbors(v).complement();
                non.erase(v);
                non.erase(v ^ 1);
                auto nv = non.to_vector();
                if (nv.size() != 2 || nv[0] / 2 != nv[1] / 2) {
                    HypothesisViolation hv;
                    hv.kind = ViolationKind::BadStructure;
                    hv.claim = "degree-floor vertex misses vertices of two pairs";
                    hv.witness_set = non;
                    return hv;
                }
            }
        }
        return std::nullopt;
    }
};

struct CycleCoverResult {
    Cycle cycle;                     // covers every vertex outside s
    SMatchedPathCover single_path;   // one s-matched path over g - s
    std::vector<std::string> transcript;
};

namespace detail_cb {

inline Rational over_t_plus_one(int n, const Rational& t) {
    return Rational(n) / (t + Rational(1));
}

// Thread z into the stretch of the sequence holding its component, trying
// the block slot, the set-neighbor slot, the replace-and-slide move, then
// any adjacent slot inside the stretch.
inline std::vector<int> insert_into_sequence(const Graph& g, std::vector<int> seq, int z,
                                             const VertexSet& comp, const VertexSet& w,
                                             bool cyclic) {
    int n = g.vertex_count();
    int len = int(seq.size());
    auto at = [&](int i) { return seq[((i % len) + len) % len]; };
    auto blocks = components(g, (VertexSet::full(n) - comp) | w);

    auto try_pair = [&](int i, int j) -> std::optional<std::vector<int>> {
        if (!g.adjacent(z, at(i)) || !g.adjacent(z, at(j))) return std::nullopt;
        std::vector<int> out = seq;
        out.insert(out.begin() + (((i % len) + len) % len) + 1, z);
        return out;
    };

    int limit = cyclic ? len : len - 1;
    // same-block consecutive pair
    for (int i = 0; i < limit; ++i) {
        int p = at(i), q = at(i + 1);
        if (!comp.contains(p) || !comp.contains(q) || w.contains(p) || w.contains(q)) continue;
        bool same = false;
        for (const auto& b : blocks)
            if (b.contains(p) && b.contains(q)) same = true;
        if (!same) continue;
        if (auto out = try_pair(i, i + 1)) return *out;
    }
    // beside an adjacent in-set vertex
    for (int i = 0; i < len; ++i) {
        int p = at(i);
        if (!w.contains(p) || p == z || !g.adjacent(z, p)) continue;
        for (int side : {1, -1}) {
            int j = i + side;
            if (!cyclic && (j < 0 || j >= len)) continue;
            int q = at(j);
            if (w.contains(q) || !comp.contains(q)) continue;
            if (auto out = try_pair(std::min(i, i + side), std::max(i, i + side))) return *out;
        }
    }
    // replace an in-set vertex by z and slide it beside its set-neighbor
    for (int i = 0; i < len; ++i) {
        int z1 = at(i);
        if (!w.contains(z1) || z1 == z) continue;
        if (!cyclic && (i == 0 || i == len - 1)) continue;
        int left = at(i - 1), right = at(i + 1);
        if (!g.adjacent(z, left) || !g.adjacent(z, right)) continue;
        VertexSet z1_setnbrs = neighbors_in(g, z1, w);
        z1_setnbrs.erase(z1);
        for (int z2 = z1_setnbrs.first(); z2 != -1; z2 = z1_setnbrs.next_after(z2)) {
            if (z2 == z) continue;
            auto it = std::find(seq.begin(), seq.end(), z2);
            if (it == seq.end()) continue;
            int j = int(it - seq.begin());
            for (int side : {1, -1}) {
                int jj = j + side;
                if (!cyclic && (jj < 0 || jj >= len)) continue;
                int q = at(jj);
                if (!comp.contains(q) || w.contains(q) || !g.adjacent(z1, q)) continue;
                std::vector<int> out = seq;
                out[i] = z;
                int pos = int(std::find(out.begin(), out.end(), z2) - out.begin());
                out.insert(out.begin() + std::min(pos, ((jj % len) + len) % len) + 1, z1);
                return out;
            }
        }
    }
    // any slot inside the component stretch
    for (int i = 0; i < limit; ++i) {
        if (!comp.contains(at(i)) && !comp.contains(at(i + 1))) continue;
        if (auto out = try_pair(i, i + 1)) return *out;
    }
    raise_structure("vertex insertion found no slot inside its component stretch");
}

}  // namespace detail_cb

// ---------------------------------------------------------------------------
// A cycle covering everything outside a minimal cutset.
// ---------------------------------------------------------------------------

inline CycleCoverResult cycle_covering_complement(const Graph& g, const VertexSet& s);

// ---------------------------------------------------------------------------
// Ordered insertions on top of the covering cycle.
// ---------------------------------------------------------------------------

inline Cycle cycle_with_ordered_insertions(const Graph& g, const VertexSet& s,
                                           const std::vector<int>& s0, const Rational& t) {
    int n = g.vertex_count();
    {
        VertexSet outside = VertexSet::full(n) - s;
        VertexSet earlier(n);
        for (int x : s0) {
            if (!s.contains(x)) throw MalformedInput("ordered insertions: s0 not inside s");
            int d = degree_in(g, x, outside | earlier);
            if (!(Rational(d) > detail_cb::over_t_plus_one(n, t) - Rational(1)))
                throw MalformedInput("ordered insertions: degree chain fails at " +
                                     std::to_string(x));
            earlier.insert(x);
        }
    }
    VertexSet s_min = minimal_cutset_within(g, s);
    auto cover = cycle_covering_complement(g, s_min);
    Cycle c = cover.cycle;
    for (int y : s0) {
        if (c.vertex_set(n).contains(y)) continue;
        c = extend_cycle_insert(g, c, VertexSet::of(n, {y}), t);
    }
    VertexSet want = (VertexSet::full(n) - s);
    for (int x : s0) want.insert(x);
    if (!want.is_subset_of(c.vertex_set(n)))
        raise_structure("ordered insertions: cycle misses a required vertex");
    return c;
}

// ---------------------------------------------------------------------------
// Hamiltonicity from two large components.
// ---------------------------------------------------------------------------

inline HamiltonianCertificate two_large_components(const Graph& g, const VertexSet& s_in,
                                                   const Rational& t) {
    int n = g.vertex_count();
    std::vector<std::string> transcript;
    if (!is_cutset(g, s_in)) throw MalformedInput("two_large_components: s is not a cutset");

    Rational big = Rational(2) * detail_cb::over_t_plus_one(n, t);
    auto order_check = [&](const VertexSet& s) {
        auto comps = components(g, s);
        int largest = -1, total = 0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            total += comps[i].count();
            if (largest == -1 || comps[i].count() > comps[largest].count()) largest = int(i);
        }
        bool ok = Rational(comps[largest].count()) >= big &&
                  Rational(total - comps[largest].count()) >= big;
        return std::make_pair(ok, largest);
    };
    if (!order_check(s_in).first)
        throw MalformedInput("two_large_components: order thresholds unmet");

    // drop s-vertices that miss the big component or see only one component
    VertexSet s = s_in;
    bool changed = true;
    while (changed) {
        changed = false;
        auto comps = components(g, s);
        int largest = 0;
        for (std::size_t i = 1; i < comps.size(); ++i)
            if (comps[i].count() > comps[largest].count()) largest = int(i);
        for (int x = s.first(); x != -1 && !changed; x = s.next_after(x)) {
            int touched = 0;
            for (const auto& c : comps)
                if (g.neighbors(x).intersects(c)) ++touched;
            bool sees_big = g.neighbors(x).intersects(comps[largest]);
            if (!sees_big || touched < 2) {
                s.erase(x);
                changed = true;
            }
        }
    }
    if (!is_cutset(g, s)) raise_structure("two_large_components: trimming destroyed the cutset");

    auto comps = components(g, s);
    int ell = int(comps.size());
    int largest = 0;
    for (int i = 1; i < ell; ++i)
        if (comps[i].count() > comps[largest].count()) largest = i;

    if (ell >= 3) {
        // every s-vertex misses part of the big component only if it covers
        // all the others, so it keeps many neighbors outside s
        for (int x = s.first(); x != -1; x = s.next_after(x)) {
            VertexSet nb = neighbors_in(g, x, comps[largest]);
            if (nb != comps[largest]) {
                for (int i = 0; i < ell; ++i) {
                    if (i == largest) continue;
                    if (neighbors_in(g, x, comps[i]) != comps[i])
                        raise_missing_edge("s-vertex complete to the small components", x,
                                           (comps[i] - g.neighbors(x)).first());
                }
            }
            if (!(Rational(degree_in(g, x, VertexSet::full(n) - s)) >= big))
                raise_structure("s-vertex short of outside degree");
        }
        auto c = cycle_with_ordered_insertions(g, s, s.to_vector(), t);
        if (!c.is_hamiltonian(g)) raise_structure("two_large_components: cycle not Hamiltonian");
        transcript.push_back("two-large: three or more components, direct insertions");
        return {c, transcript};
    }

    // exactly two components
    VertexSet s_min = minimal_cutset_within(g, s);
    comps = components(g, s_min);
    if (comps.size() != 2) raise_structure("two_large_components: trimmed cutset irregular");
    if (comps[0].count() < comps[1].count()) std::swap(comps[0], comps[1]);
    const VertexSet& d1 = comps[0];
    const VertexSet& d2 = comps[1];
    if (!(Rational(d1.count()) >= big && Rational(d2.count()) >= big))
        raise_structure("two_large_components: components shrank below threshold");

    Rational small_bound = detail_cb::over_t_plus_one(n, t);
    VertexSet s0(n);
    for (int x = s_min.first(); x != -1; x = s_min.next_after(x))
        if (Rational(degree_in(g, x, d1 | d2)) < small_bound) s0.insert(x);

    if (!s0.any()) {
        auto c = cycle_with_ordered_insertions(g, s_min, s_min.to_vector(), t);
        if (!c.is_hamiltonian(g)) raise_structure("two_large_components: cycle not Hamiltonian");
        transcript.push_back("two-large: two components, no weak vertices");
        return {c, transcript};
    }

    // weak vertices have nested neighborhoods in the big component
    for (int x = s0.first(); x != -1; x = s0.next_after(x))
        for (int y = s0.next_after(x); y != -1; y = s0.next_after(y)) {
            VertexSet nx = neighbors_in(g, x, d1), ny = neighbors_in(g, y, d1);
            if (!(nx - ny).empty() && !(ny - nx).empty())
                raise_structure("weak vertices with incomparable reach into the big component");
        }
    int xstar = s0.first();
    for (int x = s0.next_after(xstar); x != -1; x = s0.next_after(x))
        if (degree_in(g, x, d1) > degree_in(g, xstar, d1)) xstar = x;
    VertexSet nx = neighbors_in(g, xstar, d1);
    for (int y = s0.first(); y != -1; y = s0.next_after(y))
        if (!neighbors_in(g, y, d1).is_subset_of(nx))
            raise_structure("weak vertex escapes the chosen neighborhood");
    for (int z = nx.first(); z != -1; z = nx.next_after(z))
        if (!(Rational(degree_in(g, z, d1 - nx)) > small_bound))
            raise_structure("replacement vertex short of inward degree");

    VertexSet sstar = (s_min - s0) | nx;
    if (!is_cutset(g, sstar)) raise_structure("re-cut set fails to separate");
    std::vector<int> order = nx.to_vector();
    for (int x : (s_min - s0).to_vector()) order.push_back(x);
    auto c = cycle_with_ordered_insertions(g, sstar, order, t);
    if (!c.is_hamiltonian(g)) raise_structure("two_large_components: cycle not Hamiltonian");
    transcript.push_back("two-large: two components, re-cut around the weak neighborhood");
    return {c, transcript};
}

// ---------------------------------------------------------------------------
// Growing a long cycle to a Hamiltonian one.
// ---------------------------------------------------------------------------

inline HamiltonianCertificate grow_to_hamiltonian(const Graph& g, Cycle c, const Rational& t) {
    int n = g.vertex_count();
    Rational third = Rational(3) * detail_cb::over_t_plus_one(n, t);
    if (!(Rational(c.length()) >= third))
        throw MalformedInput("grow_to_hamiltonian: cycle below the length threshold");
    for (int v = 0; v < n; ++v)
        if (!c.vertex_set(n).contains(v) && !(Rational(g.degree(v)) >= third))
            throw MalformedInput("grow_to_hamiltonian: outside vertex short of degree");

    std::vector<std::string> transcript;
    while (int(c.vertices.size()) < n) {
        VertexSet outside = VertexSet::full(n) - c.vertex_set(n);
        auto pieces = components(g, VertexSet::full(n) - outside);
        bool extended = false;
        for (const auto& h : pieces) {
            VertexSet attach = neighborhood_of_set(g, h) & c.vertex_set(n);
            if (Rational(attach.count()) > detail_cb::over_t_plus_one(n, t) - Rational(1)) {
                c = extend_cycle_insert(g, c, h, t);
                extended = true;
                break;
            }
        }
        if (extended) continue;
        // a stuck piece defines the cutset for the two-component theorem
        const VertexSet& h = pieces.front();
        VertexSet s = neighborhood_of_set(g, h) & c.vertex_set(n);
        transcript.push_back("growth stalled; handing over to the two-component theorem");
        auto cert = two_large_components(g, s, t);
        for (auto& line : transcript) cert.transcript.insert(cert.transcript.begin(), line);
        return cert;
    }
    if (!c.is_hamiltonian(g)) raise_structure("grow_to_hamiltonian: final cycle invalid");
    transcript.push_back("grown by repeated insertion");
    return {c, transcript};
}

}  // namespace toughham

#include "toughham/cycle_cover_impl.hpp"

namespace toughham {

// ---------------------------------------------------------------------------
// The end-to-end pipeline.
// ---------------------------------------------------------------------------

enum class ToughnessEvidence { Asserted, BruteForce, Formula };

struct MainResult {
    std::optional<HamiltonianCertificate> certificate;
    std::optional<HypothesisViolation> violation;
    bool search_exhausted = false;
    std::vector<std::string> transcript;

    bool ok() const { return certificate.has_value(); }
};

inline MainResult main_hamiltonian(const Graph& g, const Rational& t = Rational(23),
                                   ToughnessEvidence evidence = ToughnessEvidence::BruteForce) {
    MainResult res;
    int n = g.vertex_count();
    if (n < 3) throw MalformedInput("main_hamiltonian: fewer than three vertices");
    if (auto wtn = find_induced_p4_union_p1(g)) {
        std::string msg = "main_hamiltonian: induced P4 plus isolated vertex at (";
        for (std::size_t i = 0; i < wtn->vertices.size(); ++i)
            msg += (i ? "," : "") + std::to_string(wtn->vertices[i]);
        throw MalformedInput(msg + ")");
    }

    switch (evidence) {
        case ToughnessEvidence::BruteForce: {
            auto tc = toughness(g);
            if (tc.value < t) {
                res.violation = HypothesisViolation{ViolationKind::ToughnessWrt,
                                                    "toughness below the requested bound",
                                                    tc.witness, tc.value, std::nullopt};
                return res;
            }
            res.transcript.push_back("toughness verified by enumeration: " +
                                     tc.value.to_string());
            break;
        }
        case ToughnessEvidence::Formula:
            res.transcript.push_back("toughness certified by the caller's formula");
            break;
        case ToughnessEvidence::Asserted:
            res.transcript.push_back("toughness asserted by the caller");
            break;
    }

    auto finish = [&](Cycle c, std::vector<std::string> extra) {
        if (!c.is_hamiltonian(g)) raise_structure("main: produced cycle failed verification");
        c.canonicalize();
        for (auto& line : extra) res.transcript.push_back(line);
        res.certificate = HamiltonianCertificate{c, res.transcript};
        return res;
    };

    try {
        if (g.is_complete()) {
            std::vector<int> verts(n);
            for (int i = 0; i < n; ++i) verts[i] = i;
            return finish(Cycle(verts), {"complete graph"});
        }

        VertexSet s(n);
        for (int v = 0; v < n; ++v)
            if (4LL * g.degree(v) >= n) s.insert(v);
        VertexSet tset = VertexSet::full(n) - s;
        res.transcript.push_back("high-degree set of size " + std::to_string(s.count()));

        if (!tset.any()) {
            // every vertex is high degree: straight Hamiltonian search
            auto r = ham_cycle_through_forest(g, {});
            if (r.cycle) return finish(*r.cycle, {"all degrees high, direct search"});
            res.search_exhausted = r.exhausted;
            if (!r.exhausted)
                res.violation = HypothesisViolation{ViolationKind::BadStructure,
                                                    "no Hamiltonian cycle exists", std::nullopt,
                                                    std::nullopt, std::nullopt};
            return res;
        }
        if (!s.any()) {
            // no high-degree vertices: the whole graph must already be P4-free
            if (!is_p4_free(g)) raise_structure("low-degree graph holds an induced P4");
            auto r = jung_ham_cycle(g);
            if (auto* c = std::get_if<Cycle>(&r))
                return finish(*c, {"P4-free graph, scattering construction"});
            res.violation = HypothesisViolation{
                ViolationKind::BadStructure, "scattering obstruction to Hamiltonicity",
                std::get<Infeasible>(r).certificate.witness, std::nullopt, std::nullopt};
            return res;
        }

        auto tsub = induced(g, tset);
        if (!is_p4_free(tsub.graph))
            raise_structure("low-degree remainder holds an induced P4");

        Rational nt1 = detail_cb::over_t_plus_one(n, t);
        if (Rational(tset.count()) >= Rational(3) * nt1) {
            // large low-degree side
            res.transcript.push_back("case: large low-degree side");
            auto jc = jung_ham_cycle(tsub.graph);
            if (auto* c = std::get_if<Cycle>(&jc)) {
                std::vector<int> mapped;
                for (int v : c->vertices) mapped.push_back(tsub.to_parent[v]);
                return finish(grow_to_hamiltonian(g, Cycle(mapped), t).cycle,
                              {"low-degree side Hamiltonian, grown outwards"});
            }
            // no Hamiltonian cycle in the remainder: cut it and cover
            auto cut = vertex_connectivity(tsub.graph, tsub.graph.vertex_count());
            if (!cut.cut) raise_structure("non-Hamiltonian remainder without a cutset");
            VertexSet u(n);
            cut.cut->for_each([&](int v) { u.insert(tsub.to_parent[v]); });
            for (int x = u.first(); x != -1; x = u.next_after(x)) {
                VertexSet rest = tset - u;
                if (neighbors_in(g, x, rest) != rest)
                    raise_missing_edge("cut vertex complete to the remainder", x,
                                       (rest - g.neighbors(x)).first());
            }
            auto c = cycle_with_ordered_insertions(g, s | u, u.to_vector(), t);
            return finish(grow_to_hamiltonian(g, c, t).cycle,
                          {"low-degree side covered through its cutset, grown outwards"});
        }

        // small low-degree side: cover it with s-matched paths
        res.transcript.push_back("case: small low-degree side");
        auto sc = scattering(tsub.graph);
        std::vector<Path> cover_paths;
        if (sc.value && *sc.value >= 1) {
            auto cover = s_matched_basic_cover(g, s);
            cover_paths = cover.paths;
        } else {
            auto cover = single_component_cover(g, s);
            cover_paths = cover.paths;
        }
        int k = int(cover_paths.size());
        if (sc.value && *sc.value >= 1 && !(Rational(k) <= nt1))
            raise_structure("cover component count exceeds n/(t+1)");

        // endpoint graph over s with the cover paths as mandatory pairs
        auto ssub = induced(g, s);
        std::vector<std::pair<int, int>> pair_edges;
        auto base_edges = ssub.graph.edges();
        for (const auto& p : cover_paths) {
            int a = ssub.to_child(p.front()), b = ssub.to_child(p.back());
            if (!ssub.graph.adjacent(a, b)) base_edges.emplace_back(a, b);
            pair_edges.emplace_back(a, b);
        }
        Graph haux = Graph::from_edges(ssub.graph.vertex_count(), base_edges);

        int min_deg = haux.vertex_count() ? haux.degree(0) : 0;
        for (int v = 0; v < haux.vertex_count(); ++v) min_deg = std::min(min_deg, haux.degree(v));
        if (!(Rational(min_deg) > Rational(3) * nt1))
            raise_structure("endpoint graph degree floor below 3n/(t+1)");
        auto alpha = independence_number(haux);
        if (alpha) {
            if (!(Rational(*alpha) <= nt1))
                raise_structure("endpoint graph independence number above n/(t+1)");
            res.transcript.push_back("independence number " + std::to_string(*alpha));
        } else {
            res.transcript.push_back("independence number skipped: budget");
        }

        auto expand_to_g = [&](const Cycle& hc) {
            // replace each pair edge by its cover path
            std::vector<int> out;
            int m = hc.length();
            auto pair_of = [&](int a, int b) {
                for (std::size_t i = 0; i < pair_edges.size(); ++i)
                    if ((pair_edges[i].first == a && pair_edges[i].second == b) ||
                        (pair_edges[i].first == b && pair_edges[i].second == a))
                        return int(i);
                return -1;
            };
            for (int i = 0; i < m; ++i) {
                int a = hc.vertices[i], b = hc.vertices[(i + 1) % m];
                int pi = pair_of(a, b);
                out.push_back(ssub.to_parent[a]);
                if (pi >= 0) {
                    Path p = cover_paths[pi];
                    if (p.front() != ssub.to_parent[a]) p = p.reversed();
                    out.insert(out.end(), p.vertices.begin() + 1, p.vertices.end() - 1);
                    // skip the closing endpoint: the loop emits it as the next a
                }
            }
            return Cycle(out);
        };

        auto small_cut_route = [&](const VertexSet& w_local) {
            VertexSet w(n);
            w_local.for_each([&](int v) { w.insert(ssub.to_parent[v]); });
            Rational big = Rational(2) * nt1;
            auto pieces = components(haux, w_local);
            for (const auto& piece : pieces)
                if (!(Rational(piece.count()) >= big))
                    raise_structure("endpoint-graph cut piece below 2n/(t+1)");
            return two_large_components(g, tset | w, t);
        };

        Rational quarter(n, 4);
        bool wide = quarter - Rational(tset.count()) - Rational(k) - nt1 >= Rational(2) * nt1;
        if (wide) {
            int alpha_bound = alpha ? *alpha : int((nt1.num() / nt1.den()));
            auto conn = vertex_connectivity(haux, k + alpha_bound);
            if (conn.connectivity >= k + alpha_bound) {
                auto r = ham_cycle_through_forest(haux, pair_edges);
                if (r.exhausted) {
                    res.search_exhausted = true;
                    res.transcript.push_back("endpoint-graph search exhausted");
                    return res;
                }
                if (!r.cycle) raise_structure("guaranteed endpoint-graph cycle missing");
                return finish(expand_to_g(*r.cycle), {"wide margin, full endpoint cycle"});
            }
            if (!conn.cut) raise_structure("low connectivity without a cut");
            auto cert = small_cut_route(*conn.cut);
            for (auto& line : res.transcript)
                cert.transcript.insert(cert.transcript.begin(), line);
            res.certificate = cert;
            res.transcript = cert.transcript;
            return res;
        }

        auto conn = vertex_connectivity(haux, k + 1);
        if (conn.connectivity >= k + 1) {
            auto r = cycle_through_edges(haux, pair_edges);
            if (r.exhausted) {
                res.search_exhausted = true;
                res.transcript.push_back("endpoint-graph search exhausted");
                return res;
            }
            if (!r.cycle) raise_structure("guaranteed endpoint-graph cycle missing");
            Cycle partial = expand_to_g(*r.cycle);
            if (!(Rational(partial.length()) >= Rational(3) * nt1))
                raise_structure("expanded cycle below 3n/(t+1)");
            return finish(grow_to_hamiltonian(g, partial, t).cycle,
                          {"narrow margin, partial endpoint cycle grown outwards"});
        }
        if (!conn.cut) raise_structure("low connectivity without a cut");
        auto cert = small_cut_route(*conn.cut);
        for (auto& line : res.transcript) cert.transcript.insert(cert.transcript.begin(), line);
        res.certificate = cert;
        res.transcript = cert.transcript;
        return res;
    } catch (const HypothesisError& e) {
        res.violation = e.violation();
        return res;
    } catch (const SearchExhaustedError& e) {
        res.search_exhausted = true;
        res.transcript.push_back(e.what());
        return res;
    }
}

}  // namespace toughham
