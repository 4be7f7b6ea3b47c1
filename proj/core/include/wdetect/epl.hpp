#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "wdetect/automaton.hpp"
#include "wdetect/ep_set.hpp"
#include "wdetect/rational.hpp"

namespace wdetect {

/// Integer-weighted digraph. Arc ids are indices into arcs(); `label` is an
/// opaque caller tag (usually the automaton transition the arc came from).
class WeightedDigraph {
public:
    struct Arc {
        std::size_t tail;
        std::size_t head;
        IntVec weight;
        std::size_t label;
    };
    static constexpr std::size_t no_label = std::numeric_limits<std::size_t>::max();

    WeightedDigraph(std::size_t k, std::size_t vertices);

    std::size_t dimension() const { return k_; }
    std::size_t num_vertices() const { return out_.size(); }
    std::size_t add_arc(std::size_t tail, std::size_t head, IntVec weight, std::size_t label = no_label);
    const Arc& arc(std::size_t id) const { return arcs_[id]; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<std::size_t>& out(std::size_t v) const { return out_[v]; }
    bool has_cycle() const;

private:
    std::size_t k_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> out_;
};

/// A walk is a sequence of arc ids; the empty walk stays at its start vertex.
struct Walk {
    std::vector<std::size_t> arcs;
};

IntVec walk_weight(const WeightedDigraph& g, const Walk& w);
bool walk_connects(const WeightedDigraph& g, const Walk& w, std::size_t u, std::size_t v);

/// Subgraph of unobservable transitions of an integral automaton; vertices are states
/// and arc labels are transition ids.
WeightedDigraph unobservable_digraph(const WeightedAutomaton& a);

/// Exact set of weights of walks u -> v (k = 1).
EPSet weight_set(const WeightedDigraph& g, std::size_t u, std::size_t v);

/// All-pairs version of weight_set, computed once by state elimination.
class WeightSetTable {
public:
    explicit WeightSetTable(const WeightedDigraph& g);
    const EPSet& operator()(std::size_t u, std::size_t v) const { return table_[u * n_ + v]; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<EPSet> table_;
};

/// Shortest walk u -> v of weight exactly z (k = 1), or nullopt if none exists.
std::optional<Walk> find_walk_with_weight(const WeightedDigraph& g, std::size_t u, std::size_t v, std::int64_t z);

/// Shortest walk u -> v of weight zero using only zero-weight arcs.
std::optional<Walk> find_zero_arc_walk(const WeightedDigraph& g, std::size_t u, std::size_t v);

struct SolverBudget {
    std::size_t max_nodes = 1'000'000;
};

enum class Answer { yes, no, unknown };

struct PathQuery {
    Answer answer = Answer::no;
    std::optional<Walk> witness;  // present iff answer == yes
    std::size_t nodes = 0;        // search nodes used (k > 1)
};

/// Exact-weight path decision. k = 1 is exact; k > 1 may answer unknown when the
/// budget runs out.
PathQuery has_path_with_weight(const WeightedDigraph& g, std::size_t u, std::size_t v, const IntVec& z,
                               const SolverBudget& budget = {});

/// Finite weight sets of all walks, for acyclic graphs: result[u][v] is sorted and
/// duplicate-free. Returns nullopt when the graph has a cycle.
std::optional<std::vector<std::vector<std::vector<IntVec>>>> acyclic_weight_sets(const WeightedDigraph& g);

/// Weights of walks u -> v with at most max_len arcs (any k). Sorted, duplicate-free.
std::vector<IntVec> bounded_weight_set(const WeightedDigraph& g, std::size_t u, std::size_t v, std::size_t max_len);

}  // namespace wdetect
