#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/verdict.hpp"

namespace wdetect {

/// One observed (label, accumulated weight) pair.
struct ObservationStep {
    std::string label;
    WeightVector weight;
    friend bool operator==(const ObservationStep&, const ObservationStep&) = default;
};
using Observation = std::vector<ObservationStep>;

/// Parses "(a,1);(b,3)" or, for k > 1, "(a,1,0);(b,2,-1)". Labels may be any
/// non-empty text without ',' ';' '(' ')'. Throws std::invalid_argument.
Observation parse_observation(const std::string& text, std::size_t k);
std::string to_string(const Observation& obs);

struct OracleOptions {
    /// Slack around the walk's start and end weight within which unobservable
    /// configurations are explored; 0 picks (n^2 + 1) * max |unobservable weight|.
    std::int64_t clamp = 0;
    std::size_t max_horizon = 12;
};

/// Current-state estimate by a successor chain over (state, weight) configurations.
StateSet oracle_estimate(const WeightedAutomaton& a, const Observation& obs, const OracleOptions& opt = {});

/// Current-state estimate from explicit paths with at most `horizon` transitions.
StateSet oracle_estimate_by_runs(const WeightedAutomaton& a, const Observation& obs, std::size_t horizon);

struct BoundedRun {
    StateId start;
    std::vector<TransitionId> path;
    std::vector<WeightVector> weighted_word;  // accumulated weights after each transition
    Observation observation;                  // observable entries of the weighted word
};

/// Every path from an initial state with at most `horizon` transitions.
std::vector<BoundedRun> oracle_runs(const WeightedAutomaton& a, std::size_t horizon, const OracleOptions& opt = {});

/// Observation produced by a path starting at `start` (initial weight included).
Observation observe(const WeightedAutomaton& a, StateId start, const std::vector<TransitionId>& path);

struct Counterexample {
    Property property;
    /// "lasso": the infinite path start . stem . cycle^omega violates the property
    /// at every pumping count tried. "bounded": no run up to the horizon satisfies
    /// the property's existential requirement (evidence only).
    std::string kind;
    StateId start = 0;
    std::vector<TransitionId> stem, cycle;
    Observation observation;          // of stem . cycle^3
    std::vector<StateSet> estimates;  // after each observation step
};

/// Searches lassos with stem and cycle of at most `horizon` transitions.
std::optional<Counterexample> oracle_falsify(const WeightedAutomaton& a, Property p, std::size_t horizon,
                                             const OracleOptions& opt = {});

}  // namespace wdetect
