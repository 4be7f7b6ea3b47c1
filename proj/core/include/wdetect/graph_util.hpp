#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace wdetect::graph {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct SccResult {
    std::vector<std::size_t> component;  // component id per vertex
    std::size_t count = 0;
    /// Per vertex: lies on some cycle (nontrivial component or self-loop).
    std::vector<bool> on_cycle;
};

SccResult strongly_connected_components(const Adjacency& succ);

std::vector<bool> reachable_from(const Adjacency& succ, const std::vector<std::size_t>& sources);

/// Vertices that can reach some vertex in `targets`.
std::vector<bool> can_reach(const Adjacency& succ, const std::vector<bool>& targets);

/// Shortest vertex path (BFS, neighbours in adjacency order) from any source to a
/// vertex satisfying goal. The path includes both endpoints.
std::optional<std::vector<std::size_t>> shortest_path(const Adjacency& succ,
                                                      const std::vector<std::size_t>& sources,
                                                      const std::function<bool(std::size_t)>& goal);

/// Shortest nonempty cycle through v, as a vertex sequence starting and ending at v.
std::optional<std::vector<std::size_t>> shortest_cycle_through(const Adjacency& succ, std::size_t v);

/// Restriction of succ to the vertices where keep[v] holds.
Adjacency induced(const Adjacency& succ, const std::vector<bool>& keep);

}  // namespace wdetect::graph
