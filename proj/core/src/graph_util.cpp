#include "wdetect/graph_util.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace wdetect::graph {

SccResult strongly_connected_components(const Adjacency& succ) {
    // Iterative Tarjan.
    const std::size_t n = succ.size();
    const std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    SccResult res;
    res.component.assign(n, unset);
    res.on_cycle.assign(n, false);
    std::size_t next = 0;
    std::vector<std::size_t> comp_size;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < succ[v].size()) {
                std::size_t w = succ[v][i++];
                if (index[w] == unset) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t size = 0;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    res.component[w] = res.count;
                    ++size;
                } while (w != v);
                comp_size.push_back(size);
                ++res.count;
            }
            std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (comp_size[res.component[v]] > 1) res.on_cycle[v] = true;
        for (std::size_t w : succ[v])
            if (w == v) res.on_cycle[v] = true;
    }
    return res;
}

std::vector<bool> reachable_from(const Adjacency& succ, const std::vector<std::size_t>& sources) {
    std::vector<bool> seen(succ.size(), false);
    std::vector<std::size_t> work;
    for (auto s : sources)
        if (!seen[s]) {
            seen[s] = true;
            work.push_back(s);
        }
    while (!work.empty()) {
        auto v = work.back();
        work.pop_back();
        for (auto w : succ[v])
            if (!seen[w]) {
                seen[w] = true;
                work.push_back(w);
            }
    }
    return seen;
}

std::vector<bool> can_reach(const Adjacency& succ, const std::vector<bool>& targets) {
    Adjacency pred(succ.size());
    for (std::size_t v = 0; v < succ.size(); ++v)
        for (auto w : succ[v]) pred[w].push_back(v);
    std::vector<std::size_t> src;
    for (std::size_t v = 0; v < targets.size(); ++v)
        if (targets[v]) src.push_back(v);
    return reachable_from(pred, src);
}

std::optional<std::vector<std::size_t>> shortest_path(const Adjacency& succ,
                                                      const std::vector<std::size_t>& sources,
                                                      const std::function<bool(std::size_t)>& goal) {
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(succ.size(), none);
    std::vector<bool> seen(succ.size(), false);
    std::deque<std::size_t> queue;
    for (auto s : sources)
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        if (goal(v)) {
            std::vector<std::size_t> path{v};
            while (parent[path.back()] != none) path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (auto w : succ[v])
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
    }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> shortest_cycle_through(const Adjacency& succ, std::size_t v) {
    for (auto w : succ[v])
        if (w == v) return std::vector<std::size_t>{v, v};
    auto path = shortest_path(succ, succ[v], [&](std::size_t u) {
        return std::find(succ[u].begin(), succ[u].end(), v) != succ[u].end();
    });
    if (!path) return std::nullopt;
    path->insert(path->begin(), v);
    path->push_back(v);
    return path;
}

Adjacency induced(const Adjacency& succ, const std::vector<bool>& keep) {
    Adjacency out(succ.size());
    for (std::size_t v = 0; v < succ.size(); ++v) {
        if (!keep[v]) continue;
        for (auto w : succ[v])
            if (keep[w]) out[v].push_back(w);
    }
    return out;
}

}  // namespace wdetect::graph
