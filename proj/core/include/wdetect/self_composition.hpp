#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/epl.hpp"
#include "wdetect/reach.hpp"
#include "wdetect/verdict.hpp"

namespace wdetect {

/// Pair automaton over equally labelled pairs of observable events.
struct SelfComposition {
    using Pair = std::pair<StateId, StateId>;
    struct Edge {
        std::size_t from;  // index into states
        EventId left_event, right_event;
        std::size_t to;
        std::string label;
        // One concrete realisation, expandable into two automaton paths.
        StateId left_pre, right_pre;     // states reached by the unobservable prefixes
        TransitionId left_arc, right_arc;
        IntVec weight;                   // common weight of both sides
        bool uncertain = false;          // existence not decided (solver budget)
    };
    std::vector<Pair> states;  // BFS order, initial pairs first
    std::vector<std::size_t> initial;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> out;  // per state: edge indices
    bool complete = true;                       // false if some transition is uncertain

    std::optional<std::size_t> find(const Pair& p) const;
};

struct SelfCompositionOptions {
    SolverBudget budget;
};

/// Requires a normalized automaton with integer weights.
SelfComposition build_self_composition(const WeightedAutomaton& a, const SelfCompositionOptions& opt = {});
SelfComposition build_self_composition(const WeightedAutomaton& a, const ReachTables& reach,
                                       const SelfCompositionOptions& opt = {});

/// Concrete automaton paths realising one self-composition edge: both start at the
/// edge's source pair components, have the same weight, and end at the target pair.
struct EdgeRealisation {
    std::vector<TransitionId> left, right;
};
EdgeRealisation realise_edge(const WeightedAutomaton& a, const ReachTables& reach, const SelfComposition& cc,
                             std::size_t edge);

/// Asynchronous product of the unobservable subgraph with itself: vertex
/// p * n + q stands for the pair (p, q); left moves keep their weight, right moves
/// are negated. Arc labels are the moving transition ids.
WeightedDigraph product_unobservable_digraph(const WeightedAutomaton& a);

/// Strong detectability from the self-composition. FAILS iff a pair on a cycle
/// reaches a pair with distinct components whose left state can reach a cycle.
Verdict check_sd(const WeightedAutomaton& a, const SelfComposition& cc);

}  // namespace wdetect
