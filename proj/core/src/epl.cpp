#include "wdetect/epl.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "wdetect/graph_util.hpp"

namespace wdetect {

WeightedDigraph::WeightedDigraph(std::size_t k, std::size_t vertices) : k_(k), out_(vertices) {}

std::size_t WeightedDigraph::add_arc(std::size_t tail, std::size_t head, IntVec weight, std::size_t label) {
    if (tail >= out_.size() || head >= out_.size()) throw std::out_of_range("arc endpoint out of range");
    if (weight.size() != k_) throw std::invalid_argument("arc weight dimension mismatch");
    arcs_.push_back({tail, head, std::move(weight), label});
    out_[tail].push_back(arcs_.size() - 1);
    return arcs_.size() - 1;
}

bool WeightedDigraph::has_cycle() const {
    graph::Adjacency adj(num_vertices());
    for (const auto& a : arcs_) adj[a.tail].push_back(a.head);
    auto scc = graph::strongly_connected_components(adj);
    for (bool c : scc.on_cycle)
        if (c) return true;
    return false;
}

IntVec walk_weight(const WeightedDigraph& g, const Walk& w) {
    IntVec sum(g.dimension(), 0);
    for (auto a : w.arcs) sum = add(sum, g.arc(a).weight);
    return sum;
}

bool walk_connects(const WeightedDigraph& g, const Walk& w, std::size_t u, std::size_t v) {
    std::size_t at = u;
    for (auto a : w.arcs) {
        if (a >= g.arcs().size() || g.arc(a).tail != at) return false;
        at = g.arc(a).head;
    }
    return at == v;
}

WeightedDigraph unobservable_digraph(const WeightedAutomaton& a) {
    WeightedDigraph g(a.dimension(), a.num_states());
    for (TransitionId t = 0; t < a.num_transitions(); ++t)
        if (!a.observable(t)) g.add_arc(a.transition(t).from, a.transition(t).to, a.int_weight(t), t);
    return g;
}

// ---- k = 1: state elimination over eventually periodic sets ----------------

WeightSetTable::WeightSetTable(const WeightedDigraph& g) : n_(g.num_vertices()), table_(n_ * n_) {
    if (g.dimension() != 1) throw std::invalid_argument("weight_set requires k = 1");
    auto at = [&](std::size_t i, std::size_t j) -> EPSet& { return table_[i * n_ + j]; };
    {
        std::vector<std::vector<std::int64_t>> direct(n_ * n_);
        for (const auto& arc : g.arcs()) direct[arc.tail * n_ + arc.head].push_back(arc.weight[0]);
        for (std::size_t i = 0; i < n_; ++i) direct[i * n_ + i].push_back(0);
        for (std::size_t c = 0; c < n_ * n_; ++c)
            if (!direct[c].empty()) table_[c] = EPSet::finite(direct[c]);
    }
    std::vector<EPSet> left(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        EPSet loop = at(k, k).star();
        for (std::size_t i = 0; i < n_; ++i)
            left[i] = (i == k) ? loop : (at(i, k).is_empty() ? EPSet() : at(i, k).plus(loop));
        for (std::size_t i = 0; i < n_; ++i) {
            if (left[i].is_empty()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (at(k, j).is_empty()) continue;
                if (i == k && j == k) {
                    at(k, k) = loop;
                    continue;
                }
                at(i, j) = at(i, j) | left[i].plus(at(k, j));
            }
        }
    }
}

EPSet weight_set(const WeightedDigraph& g, std::size_t u, std::size_t v) {
    if (g.dimension() != 1) throw std::invalid_argument("weight_set requires k = 1");
    // Restrict to vertices on some u -> v walk before eliminating.
    graph::Adjacency adj(g.num_vertices());
    for (const auto& a : g.arcs()) adj[a.tail].push_back(a.head);
    auto fwd = graph::reachable_from(adj, {u});
    std::vector<bool> target(g.num_vertices(), false);
    target[v] = true;
    auto bwd = graph::can_reach(adj, target);
    std::vector<std::size_t> index(g.num_vertices(), WeightedDigraph::no_label);
    std::size_t n = 0;
    for (std::size_t x = 0; x < g.num_vertices(); ++x)
        if (fwd[x] && bwd[x]) index[x] = n++;
    if (index[u] == WeightedDigraph::no_label || index[v] == WeightedDigraph::no_label) return EPSet();
    WeightedDigraph sub(1, n);
    for (const auto& a : g.arcs())
        if (index[a.tail] != WeightedDigraph::no_label && index[a.head] != WeightedDigraph::no_label)
            sub.add_arc(index[a.tail], index[a.head], a.weight);
    return WeightSetTable(sub)(index[u], index[v]);
}

namespace {

std::optional<Walk> bfs_walk(const WeightedDigraph& g, std::size_t u, std::size_t v, std::int64_t z,
                             std::int64_t radius, bool zero_arcs_only) {
    const std::int64_t width = 2 * radius + 1;
    const auto n = static_cast<std::int64_t>(g.num_vertices());
    if (checked_mul(width, n) > (std::int64_t{1} << 27)) throw std::length_error("walk search space too large");
    const std::size_t none = WeightedDigraph::no_label;
    auto code = [&](std::size_t x, std::int64_t w) { return static_cast<std::size_t>(x * width + (w + radius)); };
    std::vector<std::size_t> parent_arc(static_cast<std::size_t>(width * n), none);
    std::vector<char> seen(static_cast<std::size_t>(width * n), 0);
    std::deque<std::pair<std::size_t, std::int64_t>> queue;
    seen[code(u, 0)] = 1;
    queue.emplace_back(u, 0);
    while (!queue.empty()) {
        auto [x, w] = queue.front();
        queue.pop_front();
        if (x == v && w == z) {
            Walk walk;
            std::size_t cx = x;
            std::int64_t cw = w;
            while (parent_arc[code(cx, cw)] != none) {
                auto a = parent_arc[code(cx, cw)];
                walk.arcs.push_back(a);
                cw -= g.arc(a).weight[0];
                cx = g.arc(a).tail;
            }
            std::reverse(walk.arcs.begin(), walk.arcs.end());
            return walk;
        }
        for (auto a : g.out(x)) {
            const auto& arc = g.arc(a);
            if (zero_arcs_only && arc.weight[0] != 0) continue;
            std::int64_t nw = w + arc.weight[0];
            if (nw < -radius || nw > radius) continue;
            auto c = code(arc.head, nw);
            if (seen[c]) continue;
            seen[c] = 1;
            parent_arc[c] = a;
            queue.emplace_back(arc.head, nw);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Walk> find_walk_with_weight(const WeightedDigraph& g, std::size_t u, std::size_t v, std::int64_t z) {
    if (g.dimension() != 1) throw std::invalid_argument("find_walk_with_weight requires k = 1");
    if (!weight_set(g, u, v).contains(z)) return std::nullopt;
    std::int64_t spread = 1;
    for (const auto& a : g.arcs()) spread = checked_add(spread, std::abs(a.weight[0]));
    std::int64_t radius = checked_add(std::abs(z), spread);
    for (;;) {
        if (auto w = bfs_walk(g, u, v, z, radius, false)) return w;
        radius = checked_mul(radius, 2);
    }
}

std::optional<Walk> find_zero_arc_walk(const WeightedDigraph& g, std::size_t u, std::size_t v) {
    if (g.dimension() == 1) return bfs_walk(g, u, v, 0, 0, true);
    // general k: plain BFS over zero arcs
    graph::Adjacency adj(g.num_vertices());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_arc;
    for (std::size_t a = 0; a < g.arcs().size(); ++a) {
        const auto& arc = g.arc(a);
        if (!is_zero(arc.weight)) continue;
        if (first_arc.emplace(std::make_pair(arc.tail, arc.head), a).second) adj[arc.tail].push_back(arc.head);
    }
    auto path = graph::shortest_path(adj, {u}, [&](std::size_t x) { return x == v; });
    if (!path) return std::nullopt;
    Walk w;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) w.arcs.push_back(first_arc.at({(*path)[i], (*path)[i + 1]}));
    return w;
}

// ---- k > 1 ---------------------------------------------------------------------

namespace {

bool dfs_acyclic_path(const WeightedDigraph& g, std::size_t x, std::size_t v, const IntVec& remaining,
                      std::vector<std::size_t>& stack, const std::vector<bool>& useful) {
    if (x == v && is_zero(remaining)) return true;
    for (auto a : g.out(x)) {
        const auto& arc = g.arc(a);
        if (!useful[arc.head]) continue;
        stack.push_back(a);
        if (dfs_acyclic_path(g, arc.head, v, sub(remaining, arc.weight), stack, useful)) return true;
        stack.pop_back();
    }
    return false;
}

/// Integer feasibility search: arc multiplicities y >= 0 with flow balance
/// (out - in = [x = u] - [x = v]) and total weight z, support connected to u.
class MultiplicitySearch {
public:
    MultiplicitySearch(const WeightedDigraph& g, std::size_t u, std::size_t v, const IntVec& z,
                       std::vector<std::size_t> vars, std::size_t budget)
        : g_(g), u_(u), v_(v), vars_(std::move(vars)), budget_(budget) {
        const std::size_t n = g.num_vertices(), k = g.dimension();
        rows_ = n + k;
        coef_.assign(rows_, std::vector<std::int64_t>(vars_.size(), 0));
        rhs_.assign(rows_, 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const auto& arc = g.arc(vars_[i]);
            coef_[arc.tail][i] += 1;
            coef_[arc.head][i] -= 1;
            for (std::size_t j = 0; j < k; ++j) coef_[n + j][i] = arc.weight[j];
        }
        rhs_[u] += 1;
        rhs_[v] -= 1;
        for (std::size_t j = 0; j < k; ++j) rhs_[n + j] = z[j];
        // suffix sums of positive / negative coefficients
        pos_suffix_.assign(rows_, std::vector<std::int64_t>(vars_.size() + 1, 0));
        neg_suffix_.assign(rows_, std::vector<std::int64_t>(vars_.size() + 1, 0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t i = vars_.size(); i-- > 0;) {
                pos_suffix_[r][i] = pos_suffix_[r][i + 1] + std::max<std::int64_t>(coef_[r][i], 0);
                neg_suffix_[r][i] = neg_suffix_[r][i + 1] + std::min<std::int64_t>(coef_[r][i], 0);
            }
        // Small-solution bound n (m a)^(2m+1) for the equality system.
        long double a = 1;
        for (std::size_t r = 0; r < rows_; ++r) {
            a = std::max<long double>(a, std::fabs(static_cast<long double>(rhs_[r])));
            for (auto c : coef_[r]) a = std::max<long double>(a, std::fabs(static_cast<long double>(c)));
        }
        long double m = static_cast<long double>(rows_);
        bound_ = static_cast<long double>(vars_.size()) * std::pow(m * a, 2 * m + 1);
    }

    PathQuery run() {
        PathQuery q;
        if (!rhs_in_span()) {
            q.answer = Answer::no;
            return q;
        }
        for (std::int64_t cap = 1;; cap *= 2) {
            cap_ = cap;
            cap_hit_ = false;
            y_.assign(vars_.size(), 0);
            partial_.assign(rows_, 0);
            if (dfs(0)) {
                q.answer = Answer::yes;
                q.witness = euler_walk();
                q.nodes = nodes_;
                return q;
            }
            if (exhausted_) {
                q.answer = Answer::unknown;
                q.nodes = nodes_;
                return q;
            }
            if (!cap_hit_ || static_cast<long double>(cap) >= bound_) {
                q.answer = Answer::no;
                q.nodes = nodes_;
                return q;
            }
            if (cap > (std::int64_t{1} << 40)) {
                q.answer = Answer::unknown;
                q.nodes = nodes_;
                return q;
            }
        }
    }

private:
    // False when the equality system has no rational solution at all.
    bool rhs_in_span() const {
        try {
            std::vector<std::vector<Rational>> m(rows_);
            for (std::size_t r = 0; r < rows_; ++r) {
                for (auto c : coef_[r]) m[r].emplace_back(c);
                m[r].emplace_back(rhs_[r]);
            }
            const std::size_t cols = vars_.size();
            std::size_t rank = 0;
            for (std::size_t c = 0; c < cols && rank < rows_; ++c) {
                std::size_t piv = rank;
                while (piv < rows_ && m[piv][c].is_zero()) ++piv;
                if (piv == rows_) continue;
                std::swap(m[piv], m[rank]);
                for (std::size_t r = 0; r < rows_; ++r) {
                    if (r == rank || m[r][c].is_zero()) continue;
                    const Rational f = m[r][c] / m[rank][c];
                    for (std::size_t j = c; j <= cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
                }
                ++rank;
            }
            for (std::size_t r = rank; r < rows_; ++r)
                if (!m[r][cols].is_zero()) return false;
            return true;
        } catch (const std::overflow_error&) {
            return true;
        }
    }

    struct Range {
        long double lo, hi;
        bool empty() const { return lo > hi; }
    };

    // Values of variable i (given the earlier ones) for which every row can still be
    // closed by the later variables: each in [0, cap] when bounded, else any size.
    // Per row this is an interval in the value, so the rows intersect to one.
    Range value_range(std::size_t i, bool bounded) const {
        constexpr auto inf = std::numeric_limits<long double>::infinity();
        Range out{0, bounded ? static_cast<long double>(cap_) : inf};
        for (std::size_t r = 0; r < rows_ && !out.empty(); ++r) {
            const long double base = static_cast<long double>(rhs_[r] - partial_[r]);
            const long double c = static_cast<long double>(coef_[r][i]);
            const auto hi_sum = static_cast<long double>(pos_suffix_[r][i + 1]);
            const auto lo_sum = static_cast<long double>(neg_suffix_[r][i + 1]);
            // need = base - c * val must lie in [lo_need, hi_need]
            long double lo_need = bounded ? lo_sum * cap_ : (lo_sum < 0 ? -inf : 0);
            long double hi_need = bounded ? hi_sum * cap_ : (hi_sum > 0 ? inf : 0);
            if (c == 0) {
                if (base < lo_need || base > hi_need) out.hi = -1;
                continue;
            }
            // base - hi_need <= c * val <= base - lo_need
            long double a = (base - hi_need) / c, b = (base - lo_need) / c;
            if (c < 0) std::swap(a, b);
            out.lo = std::max(out.lo, std::ceil(a));
            out.hi = std::min(out.hi, std::floor(b));
        }
        return out;
    }

    bool dfs(std::size_t i) {
        if (nodes_ >= budget_) {
            exhausted_ = true;
            return false;
        }
        ++nodes_;
        if (i == vars_.size()) {
            for (std::size_t r = 0; r < rows_; ++r)
                if (partial_[r] != rhs_[r]) return false;
            return support_connected();
        }
        const auto bounded = value_range(i, true);
        const auto open = value_range(i, false);
        if (!open.empty() && (bounded.empty() || open.lo < bounded.lo || open.hi > bounded.hi)) cap_hit_ = true;
        if (bounded.empty()) return false;
        const auto first = static_cast<std::int64_t>(bounded.lo), last = static_cast<std::int64_t>(bounded.hi);
        for (std::int64_t val = first; val <= last; ++val) {
            y_[i] = val;
            for (std::size_t r = 0; r < rows_; ++r) partial_[r] += coef_[r][i] * val;
            if (dfs(i + 1)) return true;
            for (std::size_t r = 0; r < rows_; ++r) partial_[r] -= coef_[r][i] * val;
            if (exhausted_) break;
        }
        y_[i] = 0;
        return false;
    }

    bool support_connected() const {
        // Weak connectivity of the support arcs together with u.
        std::vector<std::size_t> parent(g_.num_vertices());
        for (std::size_t x = 0; x < parent.size(); ++x) parent[x] = x;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (y_[i] > 0) parent[find(g_.arc(vars_[i]).tail)] = find(g_.arc(vars_[i]).head);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (y_[i] > 0 && find(g_.arc(vars_[i]).tail) != find(u_)) return false;
        return true;
    }

    Walk euler_walk() const {
        // Hierholzer on the multigraph, smallest arc id first.
        std::vector<std::vector<std::size_t>> adj(g_.num_vertices());
        std::vector<std::pair<std::size_t, std::int64_t>> order;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (y_[i] > 0) order.emplace_back(vars_[i], y_[i]);
        std::sort(order.begin(), order.end());
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            for (std::int64_t c = 0; c < it->second; ++c) adj[g_.arc(it->first).tail].push_back(it->first);
        // adj lists are in decreasing id order; pop_back yields the smallest id.
        std::vector<std::size_t> stack_v{u_}, stack_a;
        std::vector<std::size_t> result;
        while (!stack_v.empty()) {
            auto x = stack_v.back();
            if (!adj[x].empty()) {
                auto a = adj[x].back();
                adj[x].pop_back();
                stack_v.push_back(g_.arc(a).head);
                stack_a.push_back(a);
            } else {
                stack_v.pop_back();
                if (!stack_a.empty()) {
                    result.push_back(stack_a.back());
                    stack_a.pop_back();
                }
            }
        }
        std::reverse(result.begin(), result.end());
        return Walk{result};
    }

    const WeightedDigraph& g_;
    std::size_t u_, v_;
    std::vector<std::size_t> vars_;
    std::size_t budget_;
    std::size_t rows_ = 0;
    std::vector<std::vector<std::int64_t>> coef_;
    std::vector<std::int64_t> rhs_;
    std::vector<std::vector<std::int64_t>> pos_suffix_, neg_suffix_;
    long double bound_ = 0;
    std::int64_t cap_ = 1;
    bool cap_hit_ = false;
    bool exhausted_ = false;
    std::size_t nodes_ = 0;
    std::vector<std::int64_t> y_;
    std::vector<std::int64_t> partial_;
};

}  // namespace

PathQuery has_path_with_weight(const WeightedDigraph& g, std::size_t u, std::size_t v, const IntVec& z,
                               const SolverBudget& budget) {
    if (z.size() != g.dimension()) throw std::invalid_argument("target weight dimension mismatch");
    PathQuery q;
    if (g.dimension() == 1) {
        if (auto w = find_walk_with_weight(g, u, v, z[0])) {
            q.answer = Answer::yes;
            q.witness = std::move(w);
        }
        return q;
    }
    if (u == v && is_zero(z)) {
        q.answer = Answer::yes;
        q.witness = Walk{};
        return q;
    }
    graph::Adjacency adj(g.num_vertices());
    for (const auto& a : g.arcs()) adj[a.tail].push_back(a.head);
    auto fwd = graph::reachable_from(adj, {u});
    std::vector<bool> target(g.num_vertices(), false);
    target[v] = true;
    auto bwd = graph::can_reach(adj, target);
    std::vector<bool> useful(g.num_vertices());
    for (std::size_t x = 0; x < useful.size(); ++x) useful[x] = fwd[x] && bwd[x];
    if (!useful[u]) return q;
    std::vector<std::size_t> vars;
    for (std::size_t a = 0; a < g.arcs().size(); ++a)
        if (useful[g.arc(a).tail] && useful[g.arc(a).head]) vars.push_back(a);
    auto scc = graph::strongly_connected_components(graph::induced(adj, useful));
    bool cyclic = std::find(scc.on_cycle.begin(), scc.on_cycle.end(), true) != scc.on_cycle.end();
    if (!cyclic) {
        std::vector<std::size_t> stack;
        if (dfs_acyclic_path(g, u, v, z, stack, useful)) {
            q.answer = Answer::yes;
            q.witness = Walk{stack};
        }
        return q;
    }
    q = MultiplicitySearch(g, u, v, z, vars, budget.max_nodes).run();
    if (q.answer == Answer::yes) {
        if (!walk_connects(g, *q.witness, u, v) || walk_weight(g, *q.witness) != z)
            throw std::logic_error("reconstructed walk does not replay");
    }
    return q;
}

std::optional<std::vector<std::vector<std::vector<IntVec>>>> acyclic_weight_sets(const WeightedDigraph& g) {
    if (g.has_cycle()) return std::nullopt;
    const std::size_t n = g.num_vertices();
    // topological order (reverse postorder)
    std::vector<int> state(n, 0);
    std::vector<std::size_t> post;
    for (std::size_t r = 0; r < n; ++r) {
        if (state[r]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> st{{r, 0}};
        state[r] = 1;
        while (!st.empty()) {
            auto& [x, i] = st.back();
            if (i < g.out(x).size()) {
                auto h = g.arc(g.out(x)[i++]).head;
                if (!state[h]) {
                    state[h] = 1;
                    st.emplace_back(h, 0);
                }
            } else {
                post.push_back(x);
                st.pop_back();
            }
        }
    }
    std::vector<std::vector<std::set<IntVec>>> sets(n, std::vector<std::set<IntVec>>(n));
    std::size_t total = 0;
    for (auto x : post) {  // successors are finished before x
        sets[x][x].insert(IntVec(g.dimension(), 0));
        for (auto a : g.out(x)) {
            const auto& arc = g.arc(a);
            for (std::size_t v = 0; v < n; ++v)
                for (const auto& w : sets[arc.head][v]) {
                    if (sets[x][v].insert(add(w, arc.weight)).second && ++total > 2'000'000)
                        throw std::length_error("acyclic weight sets too large");
                }
        }
    }
    std::vector<std::vector<std::vector<IntVec>>> out(n, std::vector<std::vector<IntVec>>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t v = 0; v < n; ++v) out[x][v].assign(sets[x][v].begin(), sets[x][v].end());
    return out;
}

std::vector<IntVec> bounded_weight_set(const WeightedDigraph& g, std::size_t u, std::size_t v, std::size_t max_len) {
    std::set<std::pair<std::size_t, IntVec>> seen{{u, IntVec(g.dimension(), 0)}};
    std::vector<std::pair<std::size_t, IntVec>> frontier{{u, IntVec(g.dimension(), 0)}};
    for (std::size_t step = 0; step < max_len && !frontier.empty(); ++step) {
        std::vector<std::pair<std::size_t, IntVec>> next;
        for (const auto& [x, w] : frontier)
            for (auto a : g.out(x)) {
                std::pair<std::size_t, IntVec> s{g.arc(a).head, add(w, g.arc(a).weight)};
                if (seen.insert(s).second) next.push_back(std::move(s));
            }
        frontier = std::move(next);
    }
    std::vector<IntVec> out;
    for (const auto& [x, w] : seen)
        if (x == v) out.push_back(w);
    return out;
}

}  // namespace wdetect
