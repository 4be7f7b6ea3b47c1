#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/verdict.hpp"

namespace wdetect {

/// Reduction instance: states q0..qm and two sinks, unobservable u1/n_i and u2/0
/// chains, e/1 from qm and e/(target+1) from q0 into the sinks, e/1 loops on both.
/// Some subset of `weights` sums to `target` iff the result is not strongly detectable.
WeightedAutomaton subset_sum_automaton(const std::vector<std::int64_t>& weights, std::int64_t target);

/// Name of sink state 1 (entered from qm) and 2 (entered from q0).
std::string subset_sum_sink(std::size_t m, int which);

struct Fixture {
    std::string name;
    WeightedAutomaton automaton;
    std::map<Property, Status> expected;
    std::string source;  // where the instance comes from
};

/// "A0", "A1" or "robot"; throws std::invalid_argument for other names.
Fixture load_fixture(const std::string& name);
std::vector<std::string> fixture_names();

struct RandomOptions {
    std::size_t max_states = 5;
    std::size_t max_events = 3;
    std::int64_t min_weight = -2;
    std::int64_t max_weight = 2;
    std::size_t k = 1;
    double unobservable_fraction = 0.3;
    double density = 0.25;  // probability of each (source, event, target)
    std::size_t labels = 2;
};

/// Reproducible for a given seed on every platform.
WeightedAutomaton random_automaton(std::uint64_t seed, const RandomOptions& opt = {});

/// Brute-force subset-sum answer.
bool subset_sum_solvable(const std::vector<std::int64_t>& weights, std::int64_t target);

}  // namespace wdetect
