#include "wdetect/self_composition.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <stdexcept>
#include <tuple>

#include "wdetect/graph_util.hpp"

namespace wdetect {

std::optional<std::size_t> SelfComposition::find(const Pair& p) const {
    auto it = std::find(states.begin(), states.end(), p);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

WeightedDigraph product_unobservable_digraph(const WeightedAutomaton& a) {
    const std::size_t n = a.num_states();
    WeightedDigraph g(a.dimension(), n * n);
    for (TransitionId t = 0; t < a.num_transitions(); ++t) {
        if (a.observable(t)) continue;
        const auto& tr = a.transition(t);
        IntVec neg = a.int_weight(t);
        for (auto& x : neg) x = -x;
        for (StateId o = 0; o < n; ++o) {
            g.add_arc(tr.from * n + o, tr.to * n + o, a.int_weight(t), t);
            g.add_arc(o * n + tr.from, o * n + tr.to, neg, t);
        }
    }
    return g;
}

namespace {

/// An observable transition t = (pre -e-> post) preceded by unobservable walks from
/// some origin; `scalar` / `vectors` hold the achievable totals including t.
struct PreArc {
    StateId pre;
    TransitionId arc;
    EPSet scalar;
    std::vector<IntVec> vectors;
};

std::vector<PreArc> pre_arcs(const WeightedAutomaton& a, const ReachTables& reach, StateId origin) {
    std::vector<PreArc> out;
    for (StateId pre = 0; pre < a.num_states(); ++pre) {
        if (!reach.reachable(origin, pre)) continue;
        for (auto t : a.outgoing(pre)) {
            if (!a.observable(t)) continue;
            PreArc p{pre, t, {}, {}};
            const auto& w = a.int_weight(t);
            if (a.dimension() == 1) {
                p.scalar = reach.scalar(origin, pre).shift(w[0]);
            } else {
                for (const auto& v : reach.vectors(origin, pre)) p.vectors.push_back(add(v, w));
                std::sort(p.vectors.begin(), p.vectors.end());
            }
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace

SelfComposition build_self_composition(const WeightedAutomaton& a, const SelfCompositionOptions& opt) {
    ReachTables reach(a);
    return build_self_composition(a, reach, opt);
}

SelfComposition build_self_composition(const WeightedAutomaton& a, const ReachTables& reach,
                                       const SelfCompositionOptions& opt) {
    if (!a.is_normalized() || !a.is_integral())
        throw std::invalid_argument("self-composition needs a normalized automaton with integer weights");
    const std::size_t n = a.num_states();
    const bool fast = !a.has_unobservable_transitions();
    SelfComposition cc;
    std::map<SelfComposition::Pair, std::size_t> index;
    std::deque<std::size_t> queue;
    auto intern = [&](const SelfComposition::Pair& p) {
        auto [it, fresh] = index.emplace(p, cc.states.size());
        if (fresh) {
            cc.states.push_back(p);
            cc.out.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };
    for (auto p : a.initial_states())
        for (auto q : a.initial_states()) cc.initial.push_back(intern({p, q}));

    std::vector<std::optional<std::vector<PreArc>>> pre_cache(n);
    auto pre_of = [&](StateId q) -> const std::vector<PreArc>& {
        if (!pre_cache[q]) pre_cache[q] = pre_arcs(a, reach, q);
        return *pre_cache[q];
    };
    std::optional<WeightedDigraph> product;
    std::map<std::tuple<std::size_t, EventId, EventId, std::size_t>, std::size_t> edge_index;

    while (!queue.empty()) {
        const std::size_t src = queue.front();
        queue.pop_front();
        const auto [q1, q2] = cc.states[src];
        const auto& left = pre_of(q1);
        const auto& right = pre_of(q2);
        for (const auto& l : left) {
            const auto& tl = a.transition(l.arc);
            for (const auto& r : right) {
                const auto& tr = a.transition(r.arc);
                if (a.label(l.arc) != a.label(r.arc)) continue;
                std::optional<IntVec> common;
                bool uncertain = false;
                if (fast) {
                    if (a.int_weight(l.arc) == a.int_weight(r.arc)) common = a.int_weight(l.arc);
                } else if (a.dimension() == 1) {
                    if (auto w = (l.scalar & r.scalar).min_abs_witness()) common = IntVec{*w};
                } else if (reach.exact()) {
                    std::vector<IntVec> both;
                    std::set_intersection(l.vectors.begin(), l.vectors.end(), r.vectors.begin(), r.vectors.end(),
                                          std::back_inserter(both));
                    if (!both.empty()) common = both.front();
                } else {
                    if (!product) product = product_unobservable_digraph(a);
                    auto target = sub(a.int_weight(r.arc), a.int_weight(l.arc));
                    auto q = has_path_with_weight(*product, q1 * n + q2, l.pre * n + r.pre, target, opt.budget);
                    if (q.answer == Answer::yes) {
                        // total weight of the left side: left walk weight + left arc
                        IntVec lw(a.dimension(), 0);
                        // arcs come in (left, right) pairs, so left moves have even ids
                        for (auto arc : q.witness->arcs)
                            if (arc % 2 == 0) lw = add(lw, product->arc(arc).weight);
                        common = add(lw, a.int_weight(l.arc));
                    } else if (q.answer == Answer::unknown) {
                        uncertain = true;
                        common = IntVec(a.dimension(), 0);
                    }
                }
                if (!common) continue;
                for (auto q3 : reach.zero_closure(tl.to))
                    for (auto q4 : reach.zero_closure(tr.to)) {
                        auto dst = intern({q3, q4});
                        auto key = std::make_tuple(src, tl.event, tr.event, dst);
                        auto it = edge_index.find(key);
                        if (it != edge_index.end()) {
                            auto& e = cc.edges[it->second];
                            if (e.uncertain && !uncertain) {
                                e.uncertain = false;
                                e.left_pre = l.pre;
                                e.right_pre = r.pre;
                                e.left_arc = l.arc;
                                e.right_arc = r.arc;
                                e.weight = *common;
                            }
                            continue;
                        }
                        SelfComposition::Edge e{src, tl.event, tr.event, dst, *a.label(l.arc), l.pre, r.pre,
                                                l.arc, r.arc, *common, uncertain};
                        edge_index.emplace(key, cc.edges.size());
                        cc.out[src].push_back(cc.edges.size());
                        cc.edges.push_back(std::move(e));
                    }
            }
        }
    }
    for (const auto& e : cc.edges)
        if (e.uncertain) cc.complete = false;
    return cc;
}

EdgeRealisation realise_edge(const WeightedAutomaton& a, const ReachTables& reach, const SelfComposition& cc,
                             std::size_t edge) {
    const auto& e = cc.edges.at(edge);
    if (e.uncertain) throw std::logic_error("cannot realise an undecided self-composition edge");
    auto side = [&](StateId origin, StateId pre, TransitionId arc, StateId end) {
        auto walk_weight = sub(e.weight, a.int_weight(arc));
        auto prefix = reach.walk(origin, pre, walk_weight);
        auto suffix = reach.zero_walk(a.transition(arc).to, end);
        if (!prefix || !suffix) throw std::logic_error("self-composition edge has no realisation");
        std::vector<TransitionId> path = *prefix;
        path.push_back(arc);
        path.insert(path.end(), suffix->begin(), suffix->end());
        return path;
    };
    const auto& from = cc.states[e.from];
    const auto& to = cc.states[e.to];
    return {side(from.first, e.left_pre, e.left_arc, to.first), side(from.second, e.right_pre, e.right_arc, to.second)};
}

namespace {

std::vector<std::size_t> edges_along(const SelfComposition& cc, const std::vector<std::size_t>& vertices) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        bool found = false;
        for (auto e : cc.out[vertices[i]])
            if (!cc.edges[e].uncertain && cc.edges[e].to == vertices[i + 1]) {
                out.push_back(e);
                found = true;
                break;
            }
        if (!found) throw std::logic_error("broken self-composition path");
    }
    return out;
}

}  // namespace

Verdict check_sd(const WeightedAutomaton& a, const SelfComposition& cc) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    v.property = Property::sd;
    graph::Adjacency adj(cc.states.size());
    for (const auto& e : cc.edges)
        if (!e.uncertain) adj[e.from].push_back(e.to);
    // Only pairs reachable through decided edges count.
    auto live = graph::reachable_from(adj, cc.initial);
    adj = graph::induced(adj, live);
    auto scc = graph::strongly_connected_components(adj);

    // Automaton states from which some cycle is reachable.
    graph::Adjacency aadj(a.num_states());
    for (const auto& t : a.transitions()) aadj[t.from].push_back(t.to);
    auto a_scc = graph::strongly_connected_components(aadj);
    auto to_cycle = graph::can_reach(aadj, a_scc.on_cycle);

    std::vector<std::size_t> cyclic;
    for (std::size_t p = 0; p < cc.states.size(); ++p)
        if (live[p] && scc.on_cycle[p]) cyclic.push_back(p);
    auto split = [&](std::size_t p) {
        const auto& [l, r] = cc.states[p];
        return l != r && to_cycle[l];
    };
    auto tail = graph::shortest_path(adj, cyclic, split);
    if (tail) {
        PairWitness w;
        w.cycle_pair = tail->front();
        w.split_pair = tail->back();
        auto stem = graph::shortest_path(adj, cc.initial, [&](std::size_t p) { return p == w.cycle_pair; });
        auto cycle = graph::shortest_cycle_through(adj, w.cycle_pair);
        w.start_pair = stem->front();
        w.stem = edges_along(cc, *stem);
        w.cycle = edges_along(cc, *cycle);
        w.tail = edges_along(cc, *tail);
        w.continuation = *find_lasso(a, {cc.states[w.split_pair].first}, false);
        v.status = Status::fails;
        v.condition = "pair-cycle-split";
        v.pair = std::move(w);
    } else if (!cc.complete) {
        v.status = Status::unknown;
        v.condition = "undecided-pair-transitions";
        v.notes = "the exact-weight solver exhausted its budget on some pair transitions";
    } else {
        v.status = Status::holds;
        v.condition = "no-cycle-reaches-split-pair";
    }
    v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

}  // namespace wdetect
