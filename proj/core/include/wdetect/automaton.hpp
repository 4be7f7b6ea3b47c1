#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wdetect/rational.hpp"

namespace wdetect {

using StateId = std::size_t;
using EventId = std::size_t;
using TransitionId = std::size_t;
/// Sorted, duplicate-free.
using StateSet = std::vector<StateId>;

/// Unvalidated, string-typed description (what the JSON reader produces).
struct RawAutomaton {
    struct Initial {
        std::string state;
        std::vector<std::string> weight;
    };
    struct Event {
        std::string name;
        std::optional<std::string> label;  // nullopt: unobservable
    };
    struct Transition {
        std::string from, event, to;
        std::vector<std::string> weight;
    };
    long long k = 1;
    std::vector<std::string> states;
    std::vector<Initial> initial;
    std::vector<Event> events;
    std::vector<Transition> transitions;
};

/// Thrown by validate() and AutomatonBuilder::build(); lists every problem found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct Event {
    std::string name;
    std::optional<std::string> label;
    bool observable() const { return label.has_value(); }
};

struct Transition {
    StateId from;
    EventId event;
    StateId to;
    WeightVector weight;
};

class AutomatonBuilder;

/// Labeled weighted automaton over (Q^k,+). Immutable once built.
/// The implicit epsilon/zero self-loop on every state is never stored.
class WeightedAutomaton {
public:
    std::size_t dimension() const { return k_; }
    std::size_t num_states() const { return states_.size(); }
    std::size_t num_events() const { return events_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }

    const std::string& state_name(StateId q) const { return states_[q]; }
    const std::vector<std::string>& state_names() const { return states_; }
    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<EventId> find_event(const std::string& name) const;

    const Event& event(EventId e) const { return events_[e]; }
    const std::vector<Event>& events() const { return events_; }
    const Transition& transition(TransitionId t) const { return transitions_[t]; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<TransitionId>& outgoing(StateId q) const { return out_[q]; }

    /// Initial states with their weights, in declaration order.
    const std::vector<std::pair<StateId, WeightVector>>& initial() const { return initial_; }
    StateSet initial_states() const;
    bool is_initial(StateId q) const;

    bool observable(TransitionId t) const { return events_[transitions_[t].event].observable(); }
    const std::optional<std::string>& label(TransitionId t) const {
        return events_[transitions_[t].event].label;
    }
    /// Distinct non-epsilon labels actually used by events, sorted.
    std::vector<std::string> labels() const;

    bool is_normalized() const;
    bool is_integral() const { return integral_; }
    /// Integer view of a transition weight; requires is_integral().
    const IntVec& int_weight(TransitionId t) const;
    bool has_unobservable_transitions() const;

    std::string describe(const StateSet& x) const;  // "{q1,q2}"

    friend bool operator==(const WeightedAutomaton& a, const WeightedAutomaton& b);

private:
    friend class AutomatonBuilder;
    std::size_t k_ = 1;
    std::vector<std::string> states_;
    std::vector<Event> events_;
    std::vector<Transition> transitions_;
    std::vector<std::pair<StateId, WeightVector>> initial_;
    std::vector<std::vector<TransitionId>> out_;
    std::map<std::string, StateId> state_index_;
    std::map<std::string, EventId> event_index_;
    bool integral_ = false;
    std::vector<IntVec> int_weights_;
};

/// Programmatic construction; build() checks the same invariants as validate().
class AutomatonBuilder {
public:
    explicit AutomatonBuilder(std::size_t k) : k_(k) {}
    AutomatonBuilder& state(std::string name);
    AutomatonBuilder& event(std::string name, std::optional<std::string> label);
    AutomatonBuilder& initial(const std::string& state, WeightVector weight);
    AutomatonBuilder& transition(const std::string& from, const std::string& event,
                                 const std::string& to, WeightVector weight);
    /// Convenience for integer weights.
    AutomatonBuilder& transition(const std::string& from, const std::string& event,
                                 const std::string& to, const IntVec& weight);
    WeightedAutomaton build() const;

private:
    std::size_t k_;
    std::vector<std::string> states_;
    std::vector<std::pair<std::string, std::optional<std::string>>> events_;
    std::vector<std::pair<std::string, WeightVector>> initial_;
    struct Arc {
        std::string from, event, to;
        WeightVector weight;
    };
    std::vector<Arc> arcs_;
};

WeightedAutomaton validate(const RawAutomaton& raw);
RawAutomaton to_raw(const WeightedAutomaton& a);

/// Moves nonzero initial weights onto fresh unobservable transitions out of one
/// fresh initial state with weight zero. Identity on already normalized input.
WeightedAutomaton normalize(const WeightedAutomaton& a);

struct ScaledAutomaton {
    WeightedAutomaton automaton;
    std::int64_t factor = 1;  // lcm of all weight denominators
};
ScaledAutomaton scale_to_integers(const WeightedAutomaton& a);

/// Multiplies every weight (initial and transition) by s.
WeightedAutomaton scale_weights(const WeightedAutomaton& a, const Rational& s);

/// x together with everything reachable through unobservable zero-weight transitions.
StateSet instantaneous_closure(const WeightedAutomaton& a, const StateSet& x);

StateSet reachable_states(const WeightedAutomaton& a);

struct StructureReport {
    bool deadlock_free = false;
    bool divergence_free = false;
    bool deterministic = false;
    bool unambiguous_checked_to_bound = false;  // exact despite the name
    bool all_observable = false;
    StateSet reachable_states;
};

StructureReport structure_report(const WeightedAutomaton& a);

StateSet make_state_set(std::vector<StateId> v);

/// Shortest path (transition ids) from one of `sources` to a state lying on a
/// cycle, together with a shortest cycle through that state. With
/// unobservable_only both parts use unobservable transitions only.
struct Lasso {
    std::vector<TransitionId> stem;
    std::vector<TransitionId> cycle;
};
std::optional<Lasso> find_lasso(const WeightedAutomaton& a, const StateSet& sources, bool unobservable_only);

}  // namespace wdetect
