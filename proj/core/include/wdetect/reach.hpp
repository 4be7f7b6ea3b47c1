#pragma once

#include <optional>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/ep_set.hpp"
#include "wdetect/epl.hpp"

namespace wdetect {

/// Per-automaton cache of unobservable-walk weights between all state pairs.
/// Requires an automaton with integer weights.
class ReachTables {
public:
    /// bounded_length is the walk length used for k > 1 when the unobservable
    /// subgraph has a cycle (the tables are then marked inexact).
    explicit ReachTables(const WeightedAutomaton& a, std::size_t bounded_length = 8);

    std::size_t dimension() const { return k_; }
    const WeightedDigraph& graph() const { return graph_; }
    /// True when vectors()/scalar() are the exact walk-weight sets.
    bool exact() const { return exact_; }

    /// k = 1 only.
    const EPSet& scalar(StateId from, StateId to) const { return (*scalar_)(from, to); }
    /// k > 1 only; sorted, duplicate-free.
    const std::vector<IntVec>& vectors(StateId from, StateId to) const { return vectors_[from][to]; }

    /// Some unobservable walk (any weight) from -> to.
    bool reachable(StateId from, StateId to) const { return reach_[from][to]; }
    const StateSet& zero_closure(StateId q) const { return zero_closure_[q]; }
    /// q reaches, through unobservable transitions, a state on an unobservable cycle.
    bool reaches_unobservable_cycle(StateId q) const { return reaches_cycle_[q]; }

    /// Concrete unobservable walk of the given weight, as transition ids.
    std::optional<std::vector<TransitionId>> walk(StateId from, StateId to, const IntVec& weight,
                                                  const SolverBudget& budget = {}) const;
    /// Unobservable zero-weight walk (transition ids) from -> to, if to is in the closure.
    std::optional<std::vector<TransitionId>> zero_walk(StateId from, StateId to) const;

private:
    std::size_t k_;
    WeightedDigraph graph_;
    bool exact_ = true;
    std::optional<WeightSetTable> scalar_;
    std::vector<std::vector<std::vector<IntVec>>> vectors_;
    std::vector<std::vector<bool>> reach_;
    std::vector<StateSet> zero_closure_;
    std::vector<bool> reaches_cycle_;
};

}  // namespace wdetect
