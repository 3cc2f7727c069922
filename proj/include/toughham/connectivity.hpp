#pragma once

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

#include "toughham/errors.hpp"
#include "toughham/freeness.hpp"
#include "toughham/graph.hpp"
#include "toughham/rational.hpp"

namespace toughham {

struct ToughnessCertificate {
    Rational value;                    // +inf for complete graphs
    std::optional<VertexSet> witness;  // cutset achieving the minimum

    bool verify(const Graph& g) const {
        if (!witness) return value.is_infinite() && g.is_complete();
        int c = component_count(g, *witness);
        return c >= 2 && Rational(witness->count(), c) == value;
    }
};

struct ScatteringCertificate {
    std::optional<int> value;          // nullopt encodes -infinity
    std::optional<VertexSet> witness;  // maximum-cardinality optimal set

    bool is_minus_infinity() const { return !value.has_value(); }

    // value treated as -inf when absent
    bool value_at_most(int bound) const { return !value || *value <= bound; }
    bool value_at_least(int bound) const { return value && *value >= bound; }

    bool verify(const Graph& g) const {
        if (!witness) return !value && g.is_complete();
        int c = component_count(g, *witness);
        return c >= 2 && value && c - witness->count() == *value;
    }
};

namespace detail {

inline VertexSet universal_vertices(const Graph& g) {
    int n = g.vertex_count();
    VertexSet u(n);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == n - 1) u.insert(v);
    return u;
}

// Adjacency of a <=64 vertex graph as one word per vertex, for the subset
// enumeration kernels.
struct MaskGraph {
    int n = 0;
    std::vector<std::uint64_t> adj;

    static MaskGraph from(const Graph& g, const std::vector<int>& verts) {
        MaskGraph m;
        m.n = int(verts.size());
        m.adj.assign(m.n, 0);
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j)
                if (i != j && g.adjacent(verts[i], verts[j]))
                    m.adj[i] |= std::uint64_t{1} << j;
        return m;
    }

    int component_count(std::uint64_t alive) const {
        int c = 0;
        std::uint64_t rest = alive;
        while (rest) {
            ++c;
            std::uint64_t comp = rest & (~rest + 1);
            std::uint64_t frontier = comp;
            while (frontier) {
                std::uint64_t next = 0;
                std::uint64_t f = frontier;
                while (f) {
                    int v = __builtin_ctzll(f);
                    f &= f - 1;
                    next |= adj[v];
                }
                next &= alive & ~comp;
                comp |= next;
                frontier = next;
            }
            rest &= ~comp;
        }
        return c;
    }
};

// Visits subsets of {0..n-1} by cardinality ascending, lexicographic within
// each cardinality.  f(mask, card) returning false aborts the scan.
template <typename F>
void for_each_subset_by_cardinality(int n, F&& f) {
    std::vector<int> idx;
    if (!f(std::uint64_t{0}, 0)) return;
    for (int k = 1; k <= n; ++k) {
        idx.resize(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::uint64_t mask = 0;
            for (int i : idx) mask |= std::uint64_t{1} << i;
            if (!f(mask, k)) return;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == n - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
}

inline VertexSet mask_to_set(std::uint64_t mask, const std::vector<int>& verts, int universe) {
    VertexSet s(universe);
    while (mask) {
        int i = __builtin_ctzll(mask);
        mask &= mask - 1;
        s.insert(verts[i]);
    }
    return s;
}

// Scattering of a P4-free graph straight off its cotree.  Union: the best
// per-part contribution max{1, s(part)} adds up.  Join: every cutset keeps
// survivors inside one part, so the part's optimum pays for the rest.
// Witness choice matches the enumeration rule (max value, then max
// cardinality, then lexicographically smallest).
inline ScatteringCertificate scattering_from_cotree(const Cotree& t, int universe) {
    if (t.kind == Cotree::Kind::Leaf) return {std::nullopt, std::nullopt};

    std::vector<ScatteringCertificate> child_results;
    std::vector<VertexSet> child_sets;
    int total = 0;
    for (const auto& c : t.children) {
        child_results.push_back(scattering_from_cotree(c, universe));
        std::vector<int> leaves;
        c.collect_leaves(leaves);
        VertexSet vs(universe);
        for (int v : leaves) vs.insert(v);
        child_sets.push_back(vs);
        total += int(leaves.size());
    }

    if (t.kind == Cotree::Kind::Union) {
        int value = 0;
        VertexSet witness(universe);
        for (std::size_t i = 0; i < child_results.size(); ++i) {
            const auto& r = child_results[i];
            if (r.value && *r.value >= 1) {
                value += *r.value;
                witness |= *r.witness;
            } else {
                value += 1;  // keep the part whole
            }
        }
        return {value, witness};
    }

    // join node
    std::optional<int> best;
    std::optional<VertexSet> best_witness;
    for (std::size_t i = 0; i < child_results.size(); ++i) {
        const auto& r = child_results[i];
        if (!r.value) continue;  // complete part cannot host the survivors
        int part_size = child_sets[i].count();
        int value = *r.value - (total - part_size);
        VertexSet witness = VertexSet(universe);
        for (std::size_t j = 0; j < child_sets.size(); ++j)
            if (j != i) witness |= child_sets[j];
        witness |= *r.witness;
        bool better = false;
        if (!best) {
            better = true;
        } else if (value != *best) {
            better = value > *best;
        } else if (witness.count() != best_witness->count()) {
            better = witness.count() > best_witness->count();
        } else {
            better = witness.lex_less(*best_witness);
        }
        if (better) {
            best = value;
            best_witness = witness;
        }
    }
    return {best, best_witness};
}

}  // namespace detail

// Exact toughness with its witness.  Every cutset contains all universal
// vertices, so only subsets of the non-universal remainder are enumerated.
inline ToughnessCertificate toughness(const Graph& g) {
    if (g.is_complete()) return {Rational::infinity(), std::nullopt};
    int n = g.vertex_count();
    VertexSet univ = detail::universal_vertices(g);
    std::vector<int> rest = (VertexSet::full(n) - univ).to_vector();
    int m = int(rest.size());
    if (m > config().enumeration_cap)
        throw InstanceTooLarge("toughness: " + std::to_string(m) +
                               " vertices after universal-vertex reduction");
    auto mg = detail::MaskGraph::from(g, rest);
    std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    int base = univ.count();

    std::optional<Rational> best;
    std::uint64_t best_mask = 0;
    int best_card = -1;
    detail::for_each_subset_by_cardinality(m, [&](std::uint64_t mask, int k) {
        int c = mg.component_count(full & ~mask);
        if (c >= 2) {
            Rational ratio(base + k, c);
            if (!best || ratio < *best || (ratio == *best && base + k > best_card)) {
                best = ratio;
                best_mask = mask;
                best_card = base + k;
            }
        }
        return true;
    });
    if (!best) return {Rational::infinity(), std::nullopt};  // no cutset at all
    VertexSet witness = univ | detail::mask_to_set(best_mask, rest, n);
    return {*best, witness};
}

// Exact scattering number with a maximum-cardinality witness.  Uses the
// subset scan when the reduced graph is small and the cotree recursion when
// the graph is P4-free, so cograph components of any size stay exact.
inline ScatteringCertificate scattering(const Graph& g) {
    if (g.vertex_count() == 0) throw MalformedInput("scattering: empty graph");
    if (g.is_complete()) return {std::nullopt, std::nullopt};
    int n = g.vertex_count();
    VertexSet univ = detail::universal_vertices(g);
    std::vector<int> rest = (VertexSet::full(n) - univ).to_vector();
    int m = int(rest.size());

    if (m > config().enumeration_cap) {
        auto ct = cotree(g);
        if (std::holds_alternative<Cotree>(ct))
            return detail::scattering_from_cotree(std::get<Cotree>(ct), n);
        throw InstanceTooLarge("scattering: " + std::to_string(m) +
                               " vertices after reduction and graph is not P4-free");
    }

    auto mg = detail::MaskGraph::from(g, rest);
    std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    int base = univ.count();

    std::optional<int> best;
    std::uint64_t best_mask = 0;
    int best_card = -1;
    detail::for_each_subset_by_cardinality(m, [&](std::uint64_t mask, int k) {
        int c = mg.component_count(full & ~mask);
        if (c >= 2) {
            int value = c - (base + k);
            if (!best || value > *best || (value == *best && base + k > best_card)) {
                best = value;
                best_mask = mask;
                best_card = base + k;
            }
        }
        return true;
    });
    if (!best) return {std::nullopt, std::nullopt};
    VertexSet witness = univ | detail::mask_to_set(best_mask, rest, n);
    return {*best, witness};
}

// Scattering of g[area], witness mapped back to the ids of g.
inline ScatteringCertificate scattering_within(const Graph& g, const VertexSet& area) {
    auto sub = induced(g, area);
    auto cert = scattering(sub.graph);
    if (cert.witness) {
        VertexSet mapped(g.vertex_count());
        cert.witness->for_each([&](int v) { mapped.insert(sub.to_parent[v]); });
        cert.witness = mapped;
    }
    return cert;
}

// Toughness restricted to cutsets W that leave part of every component of
// g - s intact.  Returns the violating cutset when the bound fails.  The
// remainder may be connected; complete graphs have no cutsets to measure.
inline std::optional<HypothesisViolation> is_t_tough_wrt(const Graph& g,
                                                         const VertexSet& s,
                                                         const Rational& t) {
    if (g.is_complete() || s == VertexSet::full(g.vertex_count()))
        throw MalformedInput("is_t_tough_wrt: no components to measure against");
    int n = g.vertex_count();
    auto comps = components(g, s);
    VertexSet univ = detail::universal_vertices(g);
    std::vector<int> rest = (VertexSet::full(n) - univ).to_vector();
    int m = int(rest.size());
    if (m > config().enumeration_cap)
        throw InstanceTooLarge("is_t_tough_wrt: " + std::to_string(m) +
                               " vertices after reduction");
    auto mg = detail::MaskGraph::from(g, rest);
    std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    int base = univ.count();
    std::vector<std::uint64_t> comp_masks;
    for (const auto& c : comps) {
        std::uint64_t cm = 0;
        for (int i = 0; i < m; ++i)
            if (c.contains(rest[i])) cm |= std::uint64_t{1} << i;
        comp_masks.push_back(cm);  // components never contain universal vertices
    }

    std::optional<Rational> worst;
    std::uint64_t worst_mask = 0;
    detail::for_each_subset_by_cardinality(m, [&](std::uint64_t mask, int k) {
        for (auto cm : comp_masks)
            if ((cm & ~mask) == 0) return true;  // component exhausted: W not qualifying
        int c = mg.component_count(full & ~mask);
        if (c >= 2) {
            Rational ratio(base + k, c);
            if (!worst || ratio < *worst) {
                worst = ratio;
                worst_mask = mask;
            }
        }
        return true;
    });
    if (worst && *worst < t) {
        HypothesisViolation v;
        v.kind = ViolationKind::ToughnessWrt;
        v.claim = "toughness with respect to S below " + t.to_string();
        v.witness_set = univ | detail::mask_to_set(worst_mask, rest, n);
        v.ratio = *worst;
        return v;
    }
    return std::nullopt;
}

// Does some subset of x cut g?  Equivalent to: some nonadjacent pair is
// separated by x minus the pair itself.
inline bool contains_cutset(const Graph& g, const VertexSet& x) {
    if (is_cutset(g, x)) return true;
    int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (g.adjacent(a, b)) continue;
            if (!x.contains(a) && !x.contains(b)) continue;  // handled by the scan above
            VertexSet rem = x;
            rem.erase(a);
            rem.erase(b);
            bool separated = true;
            for (const auto& comp : components(g, rem))
                if (comp.contains(a) && comp.contains(b)) separated = false;
            if (separated) return true;
        }
    return false;
}

// Inclusion-minimal cutset contained in s, by repeated smallest-id-first
// removal of vertices whose loss still leaves a cutset inside.
inline VertexSet minimal_cutset_within(const Graph& g, const VertexSet& s) {
    if (!contains_cutset(g, s)) throw MalformedInput("minimal_cutset_within: no cutset in s");
    VertexSet cur = s;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = cur.first(); v != -1; v = cur.next_after(v)) {
            VertexSet cand = cur;
            cand.erase(v);
            if (contains_cutset(g, cand)) {
                cur = cand;
                changed = true;
                break;
            }
        }
    }
    return cur;
}

// Inclusion-minimal cutset, and adjacency of each member to all components.
inline bool is_minimal_cutset(const Graph& g, const VertexSet& m) {
    auto comps = components(g, m);
    if (comps.size() < 2) return false;
    bool ok = true;
    m.for_each([&](int v) {
        for (const auto& c : comps)
            if (!g.neighbors(v).intersects(c)) ok = false;
    });
    return ok;
}

struct MinimalElement {
    int vertex;
    VertexSet cutset;  // a minimal cutset inside s containing the vertex
};

// A vertex of s lying in some inclusion-minimal cutset inside s.  With
// prefer_s_neighbor set, a candidate with a neighbor inside s wins; ties go
// to the smallest id.  The returned cutset is the first one found for the
// winner under the (cardinality, lex) scan order.
inline MinimalElement minimal_element(const Graph& g, const VertexSet& s,
                                      bool prefer_s_neighbor = false) {
    if (!contains_cutset(g, s)) throw MalformedInput("minimal_element: no cutset in s");
    std::vector<int> verts = s.to_vector();
    int m = int(verts.size());
    if (m > config().enumeration_cap)
        throw InstanceTooLarge("minimal_element: candidate set too large");

    int n = g.vertex_count();
    std::vector<std::optional<VertexSet>> found;
    found.resize(n);
    detail::for_each_subset_by_cardinality(m, [&](std::uint64_t mask, int) {
        if (!mask) return true;
        VertexSet cand = detail::mask_to_set(mask, verts, n);
        if (is_minimal_cutset(g, cand))
            cand.for_each([&](int v) {
                if (!found[v]) found[v] = cand;
            });
        return true;
    });

    auto pick = [&](bool need_s_neighbor) -> std::optional<MinimalElement> {
        for (int v : verts) {
            if (!found[v]) continue;
            if (need_s_neighbor && !g.neighbors(v).intersects(s)) continue;
            return MinimalElement{v, *found[v]};
        }
        return std::nullopt;
    };

    if (prefer_s_neighbor)
        if (auto r = pick(true)) return *r;
    if (auto r = pick(false)) return *r;
    raise_structure("minimal_element: no minimal element found");
}

// The three structural facts constructions rely on for a maximum scattering
// set: small subsets reach many components, components scatter no further,
// and removing part of the set leaves a maximum scattering set behind.
inline std::optional<HypothesisViolation> assert_scattering_lemma(const Graph& g,
                                                                  const VertexSet& s) {
    auto fail = [&](const std::string& claim,
                    std::optional<VertexSet> w = std::nullopt) -> HypothesisViolation {
        HypothesisViolation v;
        v.kind = ViolationKind::BadStructure;
        v.claim = claim;
        v.witness_set = std::move(w);
        return v;
    };

    auto cert = scattering(g);
    if (!cert.value || *cert.value < 0) return fail("scattering-lemma: s(G) < 0");
    auto comps = components(g, s);
    if (int(comps.size()) - s.count() != *cert.value ||
        s.count() != cert.witness->count())
        return fail("scattering-lemma: s is not a maximum scattering set", s);

    std::vector<int> verts = s.to_vector();
    int m = int(verts.size());
    bool exhaustive = m <= 14;

    // (1) every nonempty proper subset reaches at least |S1|+1 components
    auto check_reach = [&](const VertexSet& s1) -> bool {
        int touched = 0;
        for (const auto& c : comps) {
            bool hit = false;
            s1.for_each([&](int v) {
                if (g.neighbors(v).intersects(c)) hit = true;
            });
            if (hit) ++touched;
        }
        return touched >= s1.count() + 1;
    };
    std::optional<HypothesisViolation> bad;
    if (exhaustive) {
        detail::for_each_subset_by_cardinality(m, [&](std::uint64_t mask, int k) {
            if (k == 0 || k == m) return true;
            VertexSet s1 = detail::mask_to_set(mask, verts, g.vertex_count());
            if (!check_reach(s1)) {
                bad = fail("scattering-lemma(1): subset reaches too few components", s1);
                return false;
            }
            return true;
        });
    } else {
        for (int v : verts) {
            VertexSet s1(g.vertex_count());
            s1.insert(v);
            if (!check_reach(s1)) {
                bad = fail("scattering-lemma(1): subset reaches too few components", s1);
                break;
            }
        }
    }
    if (bad) return bad;

    // (2) components of G - S scatter no further
    for (const auto& c : comps) {
        auto sc = scattering_within(g, c);
        if (!sc.value_at_most(0))
            return fail("scattering-lemma(2): component with positive scattering", c);
    }

    // (3) for P4-free G, S minus any subset stays maximum in the remainder
    if (is_p4_free(g)) {
        auto check_residual = [&](const VertexSet& sstar) -> bool {
            VertexSet keep = VertexSet::full(g.vertex_count()) - sstar;
            auto sub = induced(g, keep);
            if (sub.graph.is_complete()) return s - sstar == VertexSet(g.vertex_count());
            auto res = scattering(sub.graph);
            VertexSet residual(sub.graph.vertex_count());
            (s - sstar).for_each([&](int v) { residual.insert(sub.to_child(v)); });
            int c = component_count(sub.graph, residual);
            return c >= 2 && res.value && *res.value == c - residual.count() &&
                   res.witness->count() == residual.count();
        };
        std::optional<HypothesisViolation> bad3;
        if (m <= 12) {
            detail::for_each_subset_by_cardinality(m, [&](std::uint64_t mask, int) {
                VertexSet sstar = detail::mask_to_set(mask, verts, g.vertex_count());
                if (!check_residual(sstar)) {
                    bad3 = fail("scattering-lemma(3): residual set not maximum", sstar);
                    return false;
                }
                return true;
            });
        } else {
            for (int v : verts) {
                VertexSet sstar(g.vertex_count());
                sstar.insert(v);
                if (!check_residual(sstar)) {
                    bad3 = fail("scattering-lemma(3): residual set not maximum", sstar);
                    break;
                }
            }
        }
        if (bad3) return bad3;
    }
    return std::nullopt;
}

}  // namespace toughham
