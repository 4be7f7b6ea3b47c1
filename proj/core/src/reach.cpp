#include "wdetect/reach.hpp"

#include "wdetect/graph_util.hpp"

namespace wdetect {

ReachTables::ReachTables(const WeightedAutomaton& a, std::size_t bounded_length)
    : k_(a.dimension()), graph_(unobservable_digraph(a)) {
    const std::size_t n = a.num_states();
    graph::Adjacency adj(n);
    for (const auto& arc : graph_.arcs()) adj[arc.tail].push_back(arc.head);
    reach_.assign(n, std::vector<bool>(n, false));
    for (std::size_t q = 0; q < n; ++q) reach_[q] = graph::reachable_from(adj, {q});

    auto scc = graph::strongly_connected_components(adj);
    auto hits = graph::can_reach(adj, scc.on_cycle);
    reaches_cycle_ = hits;

    zero_closure_.resize(n);
    for (std::size_t q = 0; q < n; ++q) zero_closure_[q] = instantaneous_closure(a, {q});

    if (k_ == 1) {
        scalar_.emplace(graph_);
        return;
    }
    if (auto sets = acyclic_weight_sets(graph_)) {
        vectors_ = std::move(*sets);
        return;
    }
    exact_ = false;
    vectors_.assign(n, std::vector<std::vector<IntVec>>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (reach_[u][v]) vectors_[u][v] = bounded_weight_set(graph_, u, v, bounded_length);
}

std::optional<std::vector<TransitionId>> ReachTables::walk(StateId from, StateId to, const IntVec& weight,
                                                          const SolverBudget& budget) const {
    std::optional<Walk> w;
    if (k_ == 1) {
        if (!scalar(from, to).contains(weight[0])) return std::nullopt;
        w = find_walk_with_weight(graph_, from, to, weight[0]);
    } else {
        auto q = has_path_with_weight(graph_, from, to, weight, budget);
        if (q.answer != Answer::yes) return std::nullopt;
        w = q.witness;
    }
    if (!w) return std::nullopt;
    std::vector<TransitionId> out;
    for (auto arc : w->arcs) out.push_back(graph_.arc(arc).label);
    return out;
}

std::optional<std::vector<TransitionId>> ReachTables::zero_walk(StateId from, StateId to) const {
    auto w = find_zero_arc_walk(graph_, from, to);
    if (!w) return std::nullopt;
    std::vector<TransitionId> out;
    for (auto arc : w->arcs) out.push_back(graph_.arc(arc).label);
    return out;
}

}  // namespace wdetect
