#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wdetect/automaton.hpp"

namespace wdetect {

enum class Property { sd, spd, wd, wpd };
enum class Status { holds, fails, unknown };

std::string to_string(Property p);  // "SD", ...
std::string to_string(Status s);    // "HOLDS", ...
std::optional<Property> parse_property(const std::string& s);

/// Self-composition evidence against strong detectability: stem reaches a pair on
/// a cycle, the tail leads to a pair with distinct components, and from the left
/// component of that pair the automaton can reach `continuation.cycle`.
struct PairWitness {
    std::vector<std::size_t> stem;   // self-composition edge ids
    std::vector<std::size_t> cycle;  // nonempty
    std::vector<std::size_t> tail;
    std::size_t start_pair = 0;      // initial pair
    std::size_t cycle_pair = 0;
    std::size_t split_pair = 0;
    Lasso continuation;     // stem starts at the split pair's left state
};

/// Observer/detector evidence: a path from x0 to `state`, optionally a cycle back
/// to it, and for membership conditions the automaton state and its unobservable
/// route into an unobservable cycle.
struct EstimatorWitness {
    std::vector<std::size_t> stem;   // estimator edge ids
    std::vector<std::size_t> cycle;  // may be empty
    std::size_t state = 0;
    std::optional<StateId> member;
    Lasso unobservable;     // stem starts at member
};

struct Verdict {
    Property property = Property::sd;
    Status status = Status::unknown;
    /// Short machine-readable tag of the deciding condition, e.g. "pair-cycle-split",
    /// "no-infinite-path", "unobservable-cycle", "singleton-cycle".
    std::string condition;
    std::optional<PairWitness> pair;
    std::optional<EstimatorWitness> estimator;
    std::optional<Lasso> lasso;
    std::string notes;
    double elapsed_ms = 0;
};

}  // namespace wdetect
