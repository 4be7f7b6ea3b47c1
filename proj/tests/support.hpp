#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/ep_set.hpp"
#include "wdetect/epl.hpp"
#include "wdetect/estimator.hpp"

namespace testsupport {

/// Raw description of an eventually periodic set as a union of atoms, with a
/// membership test that does not go through the EPSet code.
struct AtomDescription {
    std::vector<std::int64_t> points;
    std::vector<std::pair<std::int64_t, std::int64_t>> up;       // start, period
    std::vector<std::pair<std::int64_t, std::int64_t>> down;     // start, period
    std::vector<std::pair<std::int64_t, std::int64_t>> classes;  // residue, period
    bool complemented = false;

    bool contains(std::int64_t n) const;
    wdetect::EPSet build() const;
};

AtomDescription random_description(std::mt19937_64& rng);

/// Independent membership oracle for the N-span of generators inside [lo, hi].
bool naive_span_contains(const std::vector<std::int64_t>& gens, std::int64_t n);

/// Weights of all walks u -> v with at most max_len arcs, by plain DFS.
std::set<wdetect::IntVec> walk_weights(const wdetect::WeightedDigraph& g, std::size_t u, std::size_t v,
                                       std::size_t max_len);

/// Random integer digraph with n vertices and weights in [lo, hi].
wdetect::WeightedDigraph random_digraph(std::mt19937_64& rng, std::size_t n, std::size_t k, std::int64_t lo,
                                        std::int64_t hi, double density);

/// Follows every observer path of at most `depth` edges, stepping with each cell's
/// witness plus up to `extra` further members in [-6, 6], and compares the reached
/// state with the oracle estimate of the accumulated observation. Also probes
/// weights in [-6, 6] outside every cell, whose oracle estimate must be empty.
/// Returns one line per disagreement.
std::vector<std::string> observer_oracle_mismatches(const wdetect::WeightedAutomaton& a,
                                                    const wdetect::EstimatorAutomaton& observer, std::size_t depth,
                                                    std::size_t extra);

/// Detector coverage of observer transitions: for every observer edge x -(s,t)-> y
/// and every 2-subset (or the singleton) y' of y there is a detector edge
/// x' -(s,t)-> y' with x' a subset of x. Probes the witness and up to `extra`
/// members in [-6, 6] per edge. Returns one line per missing edge.
std::vector<std::string> detector_coverage_mismatches(const wdetect::WeightedAutomaton& a,
                                                      const wdetect::EstimatorAutomaton& observer,
                                                      const wdetect::EstimatorAutomaton& detector, std::size_t extra);

wdetect::WeightedAutomaton load_fixture_file(const std::string& name);
/// Normalized and integer-scaled fixture file.
wdetect::WeightedAutomaton prepared_fixture(const std::string& name);
std::string read_file(const std::string& path);

}  // namespace testsupport
