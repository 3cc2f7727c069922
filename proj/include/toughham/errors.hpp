#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "toughham/rational.hpp"
#include "toughham/vertex_set.hpp"

namespace toughham {

// Bad caller input: violated precondition, unparsable data.
class MalformedInput : public std::invalid_argument {
public:
    explicit MalformedInput(const std::string& what) : std::invalid_argument(what) {}
};

// Exact enumeration would exceed the configured cap.
class InstanceTooLarge : public std::runtime_error {
public:
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

enum class ViolationKind {
    ToughnessWrt,      // a cutset with ratio below the required bound
    MissingAdjacency,  // an edge a construction step was promised
    DegreeThreshold,   // a degree/order inequality failed
    BadStructure,      // a structural claim (scattering set, cover shape) failed
    SearchExhausted,   // a bounded search ran out of budget
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::ToughnessWrt: return "toughness-wrt";
        case ViolationKind::MissingAdjacency: return "missing-adjacency";
        case ViolationKind::DegreeThreshold: return "degree-threshold";
        case ViolationKind::BadStructure: return "bad-structure";
        case ViolationKind::SearchExhausted: return "search-exhausted";
    }
    return "unknown";
}

// Machine-checkable witness that some hypothesis a construction relied on
// does not hold on the given input.  Constructions never paper over a failed
// claim; they surface one of these naming the claim.
struct HypothesisViolation {
    ViolationKind kind = ViolationKind::BadStructure;
    std::string claim;                             // which step failed
    std::optional<VertexSet> witness_set;          // cutset / independent set
    std::optional<Rational> ratio;                 // offending ratio, if any
    std::optional<std::pair<int, int>> missing_edge;

    std::string describe() const {
        std::string s = std::string(to_string(kind)) + ": " + claim;
        if (witness_set) s += " witness=" + witness_set->to_string();
        if (ratio) s += " ratio=" + ratio->to_string();
        if (missing_edge)
            s += " edge=(" + std::to_string(missing_edge->first) + "," +
                 std::to_string(missing_edge->second) + ")";
        return s;
    }
};

class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(HypothesisViolation v)
        : std::runtime_error(v.describe()), violation_(std::move(v)) {}

    const HypothesisViolation& violation() const { return violation_; }

private:
    HypothesisViolation violation_;
};

[[noreturn]] inline void raise_missing_edge(const std::string& claim, int a, int b) {
    HypothesisViolation v;
    v.kind = ViolationKind::MissingAdjacency;
    v.claim = claim;
    v.missing_edge = {a, b};
    throw HypothesisError(std::move(v));
}

[[noreturn]] inline void raise_structure(const std::string& claim) {
    HypothesisViolation v;
    v.kind = ViolationKind::BadStructure;
    v.claim = claim;
    throw HypothesisError(std::move(v));
}

// Tunables shared across modules.  Node budgets may be overridden through
// the TOUGHHAM_NODE_BUDGET environment variable (see cli).
struct Config {
    int enumeration_cap = 24;             // max post-reduction vertices for subset scans
    long long matching_node_budget = 1'000'000;
    long long cycle_node_budget = 10'000'000;
    int oracle_cap = 20;                  // max n for the Hamiltonicity oracle
};

inline Config& config() {
    static Config c;
    return c;
}

}  // namespace toughham
