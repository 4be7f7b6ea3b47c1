#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/ep_set.hpp"
#include "wdetect/reach.hpp"

namespace wdetect {

/// Set of accumulated-weight deltas t that induce one transition.
/// k = 1 uses `scalar`; k > 1 lists the points explicitly. exact is false when the
/// points came from the bounded-length walk tables.
struct LabelCell {
    EPSet scalar;
    std::vector<IntVec> points;  // sorted, k > 1 only
    bool vector_valued = false;
    bool exact = true;

    bool contains(const IntVec& t) const;
    bool is_empty() const { return vector_valued ? points.empty() : scalar.is_empty(); }
    /// Least absolute value for k = 1 (ties toward nonnegative), least L1 norm then
    /// lexicographic for k > 1.
    std::optional<IntVec> witness() const;
    std::string str() const;
};

struct SuccessorCell {
    StateSet target;
    LabelCell cell;
    IntVec witness;
};

/// Partition of the weights observable together with label sigma from estimate x.
/// Cells are disjoint, their targets distinct and closed; ordered by witness.
std::vector<SuccessorCell> successor_cells(const WeightedAutomaton& a, const ReachTables& reach, const StateSet& x,
                                           const std::string& sigma);

struct EstimatorAutomaton {
    enum class Kind { observer, detector };
    struct Edge {
        std::size_t from;
        std::string label;
        IntVec witness;
        LabelCell cell;
        std::size_t to;
    };
    Kind kind = Kind::observer;
    std::vector<StateSet> states;  // states[0] is x0
    std::vector<Edge> edges;       // sorted by (from, label, witness)
    std::vector<std::vector<std::size_t>> out;
    bool exact = true;  // false if some cell came from bounded tables

    std::optional<std::size_t> find(const StateSet& x) const;
};

/// Both require a normalized automaton with integer weights.
EstimatorAutomaton build_observer(const WeightedAutomaton& a, const ReachTables& reach);
EstimatorAutomaton build_detector(const WeightedAutomaton& a, const ReachTables& reach);
EstimatorAutomaton build_observer(const WeightedAutomaton& a);
EstimatorAutomaton build_detector(const WeightedAutomaton& a);

}  // namespace wdetect
