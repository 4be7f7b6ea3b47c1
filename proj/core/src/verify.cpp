#include "wdetect/verify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "wdetect/graph_util.hpp"

namespace wdetect {

std::string to_string(Property p) {
    switch (p) {
        case Property::sd: return "SD";
        case Property::spd: return "SPD";
        case Property::wd: return "WD";
        case Property::wpd: return "WPD";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::holds: return "HOLDS";
        case Status::fails: return "FAILS";
        case Status::unknown: return "UNKNOWN";
    }
    return "?";
}

std::optional<Property> parse_property(const std::string& s) {
    std::string l;
    for (char c : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (l == "sd") return Property::sd;
    if (l == "spd") return Property::spd;
    if (l == "wd") return Property::wd;
    if (l == "wpd") return Property::wpd;
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

graph::Adjacency estimator_graph(const EstimatorAutomaton& ea) {
    graph::Adjacency adj(ea.states.size());
    for (const auto& e : ea.edges) adj[e.from].push_back(e.to);
    return adj;
}

std::vector<std::size_t> estimator_edges_along(const EstimatorAutomaton& ea, const std::vector<std::size_t>& vs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        auto it = std::find_if(ea.out[vs[i]].begin(), ea.out[vs[i]].end(),
                               [&](std::size_t e) { return ea.edges[e].to == vs[i + 1]; });
        if (it == ea.out[vs[i]].end()) throw std::logic_error("broken estimator path");
        out.push_back(*it);
    }
    return out;
}

std::vector<std::size_t> stem_to(const EstimatorAutomaton& ea, const graph::Adjacency& adj, std::size_t target) {
    auto path = graph::shortest_path(adj, {0}, [&](std::size_t v) { return v == target; });
    return estimator_edges_along(ea, *path);
}

/// A reachable estimator cycle all of whose states satisfy keep.
std::optional<EstimatorWitness> cycle_within(const EstimatorAutomaton& ea, const std::function<bool(std::size_t)>& keep) {
    auto adj = estimator_graph(ea);
    std::vector<bool> mask(ea.states.size());
    for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = keep(v);
    auto sub = graph::induced(adj, mask);
    auto scc = graph::strongly_connected_components(sub);
    for (std::size_t v = 0; v < ea.states.size(); ++v) {
        if (!mask[v] || !scc.on_cycle[v]) continue;
        EstimatorWitness w;
        w.state = v;
        w.stem = stem_to(ea, adj, v);
        w.cycle = estimator_edges_along(ea, *graph::shortest_cycle_through(sub, v));
        return w;
    }
    return std::nullopt;
}

/// A reachable estimator state passing `keep` with a member reaching an unobservable cycle.
std::optional<EstimatorWitness> member_reaching_unobservable_cycle(const WeightedAutomaton& a, const ReachTables& reach,
                                                                   const EstimatorAutomaton& ea,
                                                                   const std::function<bool(std::size_t)>& keep) {
    auto adj = estimator_graph(ea);
    // BFS order makes the first hit one of the closest states.
    for (std::size_t v = 0; v < ea.states.size(); ++v) {
        if (!keep(v)) continue;
        for (auto q : ea.states[v])
            if (reach.reaches_unobservable_cycle(q)) {
                EstimatorWitness w;
                w.state = v;
                w.stem = stem_to(ea, adj, v);
                w.member = q;
                w.unobservable = *find_lasso(a, {q}, true);
                return w;
            }
    }
    return std::nullopt;
}

bool has_reachable_cycle(const WeightedAutomaton& a) {
    graph::Adjacency adj(a.num_states());
    for (const auto& t : a.transitions()) adj[t.from].push_back(t.to);
    auto live = graph::reachable_from(adj, a.initial_states());
    auto scc = graph::strongly_connected_components(adj);
    for (std::size_t q = 0; q < a.num_states(); ++q)
        if (live[q] && scc.on_cycle[q]) return true;
    return false;
}

/// Path from an initial state (any transitions) to a state on an unobservable cycle,
/// followed by that cycle.
std::optional<Lasso> reachable_unobservable_cycle(const WeightedAutomaton& a) {
    const std::size_t n = a.num_states();
    graph::Adjacency all(n), unobs(n);
    for (const auto& t : a.transitions()) all[t.from].push_back(t.to);
    for (TransitionId t = 0; t < a.num_transitions(); ++t)
        if (!a.observable(t)) unobs[a.transition(t).from].push_back(a.transition(t).to);
    auto scc = graph::strongly_connected_components(unobs);
    auto path = graph::shortest_path(all, a.initial_states(), [&](std::size_t q) { return scc.on_cycle[q]; });
    if (!path) return std::nullopt;
    auto arc = [&](std::size_t u, std::size_t v, bool unobservable_only) {
        for (auto t : a.outgoing(u))
            if (a.transition(t).to == v && (!unobservable_only || !a.observable(t))) return t;
        throw std::logic_error("missing transition");
    };
    Lasso l;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) l.stem.push_back(arc((*path)[i], (*path)[i + 1], false));
    auto cycle = graph::shortest_cycle_through(unobs, path->back());
    for (std::size_t i = 0; i + 1 < cycle->size(); ++i) l.cycle.push_back(arc((*cycle)[i], (*cycle)[i + 1], true));
    return l;
}

Verdict inexact(Property p, Clock::time_point t0) {
    Verdict v;
    v.property = p;
    v.status = Status::unknown;
    v.condition = "bounded-weight-tables";
    v.notes = "label cells come from bounded-length walk tables (k > 1 with unobservable cycles)";
    v.elapsed_ms = ms_since(t0);
    return v;
}

}  // namespace

Verdict check_spd_observer(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& observer) {
    auto t0 = Clock::now();
    if (!observer.exact) return inexact(Property::spd, t0);
    Verdict v;
    v.property = Property::spd;
    if (auto w = member_reaching_unobservable_cycle(a, reach, observer,
                                                    [&](std::size_t s) { return observer.states[s].size() > 1; })) {
        v.status = Status::fails;
        v.condition = "ambiguous-state-reaches-unobservable-cycle";
        v.estimator = std::move(w);
    } else if (auto w = cycle_within(observer, [&](std::size_t s) { return observer.states[s].size() > 1; })) {
        v.status = Status::fails;
        v.condition = "cycle-without-singleton";
        v.estimator = std::move(w);
    } else {
        v.status = Status::holds;
        v.condition = "every-cycle-meets-singleton";
    }
    v.elapsed_ms = ms_since(t0);
    return v;
}

Verdict check_spd(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& detector,
                  const EstimatorAutomaton* observer) {
    auto t0 = Clock::now();
    if (!detector.exact) return inexact(Property::spd, t0);
    Verdict v;
    v.property = Property::spd;
    if (auto w = member_reaching_unobservable_cycle(a, reach, detector,
                                                    [&](std::size_t s) { return detector.states[s].size() > 1; })) {
        v.status = Status::fails;
        v.condition = "ambiguous-state-reaches-unobservable-cycle";
        v.estimator = std::move(w);
    } else if (auto w = cycle_within(detector, [&](std::size_t s) { return detector.states[s].size() == 2; })) {
        v.status = Status::fails;
        v.condition = "cycle-of-pairs";
        v.estimator = std::move(w);
    } else {
        v.status = Status::holds;
        v.condition = "every-cycle-meets-singleton";
    }
    if (observer) {
        auto other = check_spd_observer(a, reach, *observer);
        if (other.status != Status::unknown && other.status != v.status)
            throw std::logic_error("detector and observer disagree on SPD: " + to_string(v.status) + " vs " +
                                   to_string(other.status));
    }
    v.elapsed_ms = ms_since(t0);
    return v;
}

Verdict check_wd(const WeightedAutomaton& a, const ReachTables&, const EstimatorAutomaton& observer) {
    auto t0 = Clock::now();
    Verdict v;
    v.property = Property::wd;
    if (!has_reachable_cycle(a)) {
        v.status = Status::holds;
        v.condition = "no-infinite-path";
    } else if (auto l = reachable_unobservable_cycle(a)) {
        v.status = Status::holds;
        v.condition = "unobservable-cycle";
        v.lasso = std::move(l);
    } else if (auto w = cycle_within(observer, [&](std::size_t s) { return observer.states[s].size() == 1; })) {
        v.status = Status::holds;
        v.condition = "singleton-cycle";
        v.estimator = std::move(w);
    } else if (!observer.exact) {
        return inexact(Property::wd, t0);
    } else {
        v.status = Status::fails;
        v.condition = "no-singleton-cycle";
    }
    v.elapsed_ms = ms_since(t0);
    return v;
}

Verdict check_wpd(const WeightedAutomaton& a, const ReachTables& reach, const EstimatorAutomaton& observer) {
    auto t0 = Clock::now();
    Verdict v;
    v.property = Property::wpd;
    auto singleton = [&](std::size_t s) { return observer.states[s].size() == 1; };
    if (!has_reachable_cycle(a)) {
        v.status = Status::holds;
        v.condition = "no-infinite-path";
        v.elapsed_ms = ms_since(t0);
        return v;
    }
    if (!observer.exact) return inexact(Property::wpd, t0);
    if (auto w = member_reaching_unobservable_cycle(a, reach, observer, singleton)) {
        v.status = Status::holds;
        v.condition = "singleton-reaches-unobservable-cycle";
        v.estimator = std::move(w);
    } else {
        auto adj = estimator_graph(observer);
        auto scc = graph::strongly_connected_components(adj);
        std::optional<EstimatorWitness> found;
        for (std::size_t s = 0; s < observer.states.size() && !found; ++s) {
            if (!singleton(s) || !scc.on_cycle[s]) continue;
            EstimatorWitness w;
            w.state = s;
            w.stem = stem_to(observer, adj, s);
            w.cycle = estimator_edges_along(observer, *graph::shortest_cycle_through(adj, s));
            found = std::move(w);
        }
        if (found) {
            v.status = Status::holds;
            v.condition = "cycle-through-singleton";
            v.estimator = std::move(found);
        } else {
            v.status = Status::fails;
            v.condition = "no-cycle-through-singleton";
        }
    }
    v.elapsed_ms = ms_since(t0);
    return v;
}

Prepared prepare(const WeightedAutomaton& a) {
    auto scaled = scale_to_integers(normalize(a));
    return {std::move(scaled.automaton), scaled.factor};
}

Report check_properties(const WeightedAutomaton& a, const std::vector<Property>& props, const CheckOptions& opt) {
    Report r{prepare(a), {}, {}, {}, {}, {}};
    const auto& m = r.prepared.automaton;
    auto t0 = Clock::now();
    r.reach.emplace(m, opt.bounded_length);
    const auto& reach = *r.reach;
    const double setup = ms_since(t0);
    auto need_observer = [&]() -> const EstimatorAutomaton& {
        if (!r.observer) r.observer = build_observer(m, reach);
        return *r.observer;
    };
    for (auto p : props) {
        auto start = Clock::now();
        Verdict v;
        switch (p) {
            case Property::sd:
                if (!r.cc) r.cc = build_self_composition(m, reach, {opt.budget});
                v = check_sd(m, *r.cc);
                break;
            case Property::spd:
                if (!r.detector) r.detector = build_detector(m, reach);
                v = check_spd(m, reach, *r.detector, opt.cross_check_spd ? &need_observer() : nullptr);
                break;
            case Property::wd: v = check_wd(m, reach, need_observer()); break;
            case Property::wpd: v = check_wpd(m, reach, need_observer()); break;
        }
        v.elapsed_ms = ms_since(start) + setup;
        r.verdicts.push_back(std::move(v));
    }
    return r;
}

Report check_all(const WeightedAutomaton& a, const CheckOptions& opt) {
    return check_properties(a, {Property::sd, Property::spd, Property::wd, Property::wpd}, opt);
}

Verdict check_property(const WeightedAutomaton& a, Property p, const CheckOptions& opt) {
    return check_properties(a, {p}, opt).verdicts.front();
}

int exit_code(const std::vector<Verdict>& verdicts) {
    bool unknown = false;
    for (const auto& v : verdicts) {
        if (v.status == Status::fails) return 1;
        if (v.status == Status::unknown) unknown = true;
    }
    return unknown ? 2 : 0;
}

}  // namespace wdetect
