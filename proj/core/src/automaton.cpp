#include "wdetect/automaton.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "wdetect/graph_util.hpp"

namespace wdetect {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    std::string s = "invalid automaton:";
    for (const auto& m : v) s += "\n  - " + m;
    return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

StateSet make_state_set(std::vector<StateId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// ---- WeightedAutomaton --------------------------------------------------

std::optional<StateId> WeightedAutomaton::find_state(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EventId> WeightedAutomaton::find_event(const std::string& name) const {
    auto it = event_index_.find(name);
    if (it == event_index_.end()) return std::nullopt;
    return it->second;
}

StateSet WeightedAutomaton::initial_states() const {
    std::vector<StateId> v;
    for (const auto& [q, w] : initial_) v.push_back(q);
    return make_state_set(std::move(v));
}

bool WeightedAutomaton::is_initial(StateId q) const {
    for (const auto& [p, w] : initial_)
        if (p == q) return true;
    return false;
}

std::vector<std::string> WeightedAutomaton::labels() const {
    std::set<std::string> s;
    for (const auto& e : events_)
        if (e.label) s.insert(*e.label);
    return {s.begin(), s.end()};
}

bool WeightedAutomaton::is_normalized() const {
    for (const auto& [q, w] : initial_)
        if (!w.is_zero()) return false;
    return true;
}

const IntVec& WeightedAutomaton::int_weight(TransitionId t) const {
    if (!integral_) throw std::logic_error("automaton weights are not integral; scale first");
    return int_weights_[t];
}

bool WeightedAutomaton::has_unobservable_transitions() const {
    for (TransitionId t = 0; t < transitions_.size(); ++t)
        if (!observable(t)) return true;
    return false;
}

std::string WeightedAutomaton::describe(const StateSet& x) const {
    std::string s = "{";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += states_[x[i]];
    }
    return s + "}";
}

bool operator==(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    if (a.k_ != b.k_ || a.states_ != b.states_ || a.initial_ != b.initial_) return false;
    if (a.events_.size() != b.events_.size() || a.transitions_.size() != b.transitions_.size()) return false;
    for (std::size_t i = 0; i < a.events_.size(); ++i)
        if (a.events_[i].name != b.events_[i].name || a.events_[i].label != b.events_[i].label) return false;
    for (std::size_t i = 0; i < a.transitions_.size(); ++i) {
        const auto &x = a.transitions_[i], &y = b.transitions_[i];
        if (x.from != y.from || x.event != y.event || x.to != y.to || x.weight != y.weight) return false;
    }
    return true;
}

// ---- builder -------------------------------------------------------------

AutomatonBuilder& AutomatonBuilder::state(std::string name) {
    states_.push_back(std::move(name));
    return *this;
}

AutomatonBuilder& AutomatonBuilder::event(std::string name, std::optional<std::string> label) {
    events_.emplace_back(std::move(name), std::move(label));
    return *this;
}

AutomatonBuilder& AutomatonBuilder::initial(const std::string& state, WeightVector weight) {
    initial_.emplace_back(state, std::move(weight));
    return *this;
}

AutomatonBuilder& AutomatonBuilder::transition(const std::string& from, const std::string& event,
                                               const std::string& to, WeightVector weight) {
    arcs_.push_back({from, event, to, std::move(weight)});
    return *this;
}

AutomatonBuilder& AutomatonBuilder::transition(const std::string& from, const std::string& event,
                                               const std::string& to, const IntVec& weight) {
    return transition(from, event, to, WeightVector::from_ints(weight));
}

WeightedAutomaton AutomatonBuilder::build() const {
    std::vector<std::string> errors;
    WeightedAutomaton a;
    if (k_ < 1) errors.push_back("dimension k must be at least 1");
    a.k_ = k_;
    for (const auto& s : states_) {
        if (s.empty()) errors.push_back("empty state id");
        if (!a.state_index_.emplace(s, a.states_.size()).second) {
            errors.push_back("duplicate state \"" + s + "\"");
            continue;
        }
        a.states_.push_back(s);
    }
    for (const auto& [name, label] : events_) {
        if (name.empty()) errors.push_back("empty event id");
        if (label && label->empty()) errors.push_back("event \"" + name + "\" has an empty label (use null for epsilon)");
        if (!a.event_index_.emplace(name, a.events_.size()).second) {
            errors.push_back("duplicate event \"" + name + "\"");
            continue;
        }
        a.events_.push_back({name, label});
    }
    if (initial_.empty()) errors.push_back("empty initial state set");
    std::set<StateId> seen_init;
    for (const auto& [s, w] : initial_) {
        auto q = a.find_state(s);
        if (!q) {
            errors.push_back("initial state \"" + s + "\" is not declared");
            continue;
        }
        if (w.dimension() != k_) {
            errors.push_back("initial weight of \"" + s + "\" has dimension " + std::to_string(w.dimension()) +
                             ", expected " + std::to_string(k_));
            continue;
        }
        if (!seen_init.insert(*q).second) {
            errors.push_back("initial state \"" + s + "\" listed twice");
            continue;
        }
        a.initial_.emplace_back(*q, w);
    }
    std::set<std::tuple<StateId, EventId, StateId>> seen_arcs;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const auto& arc = arcs_[i];
        std::string where = "transition #" + std::to_string(i) + " (" + arc.from + " -" + arc.event + "-> " + arc.to + ")";
        auto f = a.find_state(arc.from);
        auto t = a.find_state(arc.to);
        auto e = a.find_event(arc.event);
        bool ok = true;
        if (!f) errors.push_back(where + ": undeclared source state \"" + arc.from + "\""), ok = false;
        if (!t) errors.push_back(where + ": undeclared target state \"" + arc.to + "\""), ok = false;
        if (!e) errors.push_back(where + ": undeclared event \"" + arc.event + "\""), ok = false;
        if (arc.weight.dimension() != k_) {
            errors.push_back(where + ": weight has dimension " + std::to_string(arc.weight.dimension()) +
                             ", expected " + std::to_string(k_));
            ok = false;
        }
        if (!ok) continue;
        if (!seen_arcs.emplace(*f, *e, *t).second) {
            errors.push_back(where + ": duplicate (source, event, target)");
            continue;
        }
        a.transitions_.push_back({*f, *e, *t, arc.weight});
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));

    a.out_.assign(a.states_.size(), {});
    for (TransitionId t = 0; t < a.transitions_.size(); ++t) a.out_[a.transitions_[t].from].push_back(t);
    a.integral_ = true;
    for (const auto& tr : a.transitions_)
        if (!tr.weight.is_integral()) a.integral_ = false;
    for (const auto& [q, w] : a.initial_)
        if (!w.is_integral()) a.integral_ = false;
    if (a.integral_)
        for (const auto& tr : a.transitions_) a.int_weights_.push_back(tr.weight.to_ints());
    return a;
}

WeightedAutomaton validate(const RawAutomaton& raw) {
    std::vector<std::string> errors;
    if (raw.k < 1) {
        errors.push_back("dimension k must be at least 1, got " + std::to_string(raw.k));
        throw ValidationError(std::move(errors));
    }
    const auto k = static_cast<std::size_t>(raw.k);
    auto parse_weight = [&](const std::vector<std::string>& w, const std::string& where) -> std::optional<WeightVector> {
        if (w.size() != k) {
            errors.push_back(where + ": dimension mismatch (weight has " + std::to_string(w.size()) +
                             " entries, k = " + std::to_string(k) + ")");
            return std::nullopt;
        }
        WeightVector v(k);
        for (std::size_t i = 0; i < k; ++i) {
            try {
                v[i] = Rational::parse(w[i]);
            } catch (const std::exception& ex) {
                errors.push_back(where + ": non-rational weight entry: " + ex.what());
                return std::nullopt;
            }
        }
        return v;
    };

    AutomatonBuilder b(k);
    for (const auto& s : raw.states) b.state(s);
    for (const auto& e : raw.events) b.event(e.name, e.label);
    for (const auto& init : raw.initial)
        if (auto w = parse_weight(init.weight, "initial weight of \"" + init.state + "\"")) b.initial(init.state, *w);
    for (std::size_t i = 0; i < raw.transitions.size(); ++i) {
        const auto& t = raw.transitions[i];
        auto where = "transition #" + std::to_string(i) + " (" + t.from + " -" + t.event + "-> " + t.to + ")";
        if (auto w = parse_weight(t.weight, where)) b.transition(t.from, t.event, t.to, *w);
    }
    std::optional<WeightedAutomaton> a;
    try {
        a = b.build();
    } catch (const ValidationError& ex) {
        for (const auto& v : ex.violations())
            if (std::find(errors.begin(), errors.end(), v) == errors.end()) errors.push_back(v);
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return std::move(*a);
}

RawAutomaton to_raw(const WeightedAutomaton& a) {
    RawAutomaton r;
    r.k = static_cast<long long>(a.dimension());
    r.states = a.state_names();
    auto strs = [](const WeightVector& w) {
        std::vector<std::string> s;
        for (const auto& x : w.entries()) s.push_back(x.str());
        return s;
    };
    for (const auto& [q, w] : a.initial()) r.initial.push_back({a.state_name(q), strs(w)});
    for (const auto& e : a.events()) r.events.push_back({e.name, e.label});
    for (const auto& t : a.transitions())
        r.transitions.push_back({a.state_name(t.from), a.event(t.event).name, a.state_name(t.to), strs(t.weight)});
    return r;
}

// ---- transformations -------------------------------------------------------

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    std::string s = base;
    while (taken.count(s)) s += "'";
    return s;
}

}  // namespace

WeightedAutomaton normalize(const WeightedAutomaton& a) {
    if (a.is_normalized()) return a;
    std::set<std::string> state_names(a.state_names().begin(), a.state_names().end());
    std::set<std::string> event_names;
    for (const auto& e : a.events()) event_names.insert(e.name);
    const std::string init = fresh_name("init", state_names);
    const std::string eps = fresh_name("init_eps", event_names);

    AutomatonBuilder b(a.dimension());
    for (const auto& s : a.state_names()) b.state(s);
    b.state(init);
    for (const auto& e : a.events()) b.event(e.name, e.label);
    b.event(eps, std::nullopt);
    WeightVector zero(a.dimension());
    b.initial(init, zero);
    for (const auto& [q, w] : a.initial())
        if (w.is_zero()) b.initial(a.state_name(q), w);
    for (const auto& t : a.transitions())
        b.transition(a.state_name(t.from), a.event(t.event).name, a.state_name(t.to), t.weight);
    for (const auto& [q, w] : a.initial())
        if (!w.is_zero()) b.transition(init, eps, a.state_name(q), w);
    return b.build();
}

WeightedAutomaton scale_weights(const WeightedAutomaton& a, const Rational& s) {
    AutomatonBuilder b(a.dimension());
    for (const auto& n : a.state_names()) b.state(n);
    for (const auto& e : a.events()) b.event(e.name, e.label);
    for (const auto& [q, w] : a.initial()) b.initial(a.state_name(q), w * s);
    for (const auto& t : a.transitions())
        b.transition(a.state_name(t.from), a.event(t.event).name, a.state_name(t.to), t.weight * s);
    return b.build();
}

ScaledAutomaton scale_to_integers(const WeightedAutomaton& a) {
    std::int64_t m = 1;
    auto visit = [&](const WeightVector& w) {
        for (const auto& x : w.entries()) m = lcm64(m, x.den());
    };
    for (const auto& [q, w] : a.initial()) visit(w);
    for (const auto& t : a.transitions()) visit(t.weight);
    if (m == 1) return {a, 1};
    return {scale_weights(a, Rational(m)), m};
}

StateSet instantaneous_closure(const WeightedAutomaton& a, const StateSet& x) {
    std::vector<bool> in(a.num_states(), false);
    std::vector<StateId> work;
    for (auto q : x)
        if (!in[q]) {
            in[q] = true;
            work.push_back(q);
        }
    while (!work.empty()) {
        auto q = work.back();
        work.pop_back();
        for (auto t : a.outgoing(q)) {
            const auto& tr = a.transition(t);
            if (a.observable(t) || !tr.weight.is_zero() || in[tr.to]) continue;
            in[tr.to] = true;
            work.push_back(tr.to);
        }
    }
    StateSet out;
    for (StateId q = 0; q < a.num_states(); ++q)
        if (in[q]) out.push_back(q);
    return out;
}

namespace {

graph::Adjacency state_graph(const WeightedAutomaton& a, bool unobservable_only) {
    graph::Adjacency adj(a.num_states());
    for (TransitionId t = 0; t < a.num_transitions(); ++t) {
        if (unobservable_only && a.observable(t)) continue;
        adj[a.transition(t).from].push_back(a.transition(t).to);
    }
    return adj;
}

}  // namespace

std::optional<Lasso> find_lasso(const WeightedAutomaton& a, const StateSet& sources, bool unobservable_only) {
    auto adj = state_graph(a, unobservable_only);
    auto scc = graph::strongly_connected_components(adj);
    auto path = graph::shortest_path(adj, sources, [&](std::size_t q) { return scc.on_cycle[q]; });
    if (!path) return std::nullopt;
    auto cycle = graph::shortest_cycle_through(adj, path->back());
    auto arc_between = [&](StateId p, StateId q) {
        for (auto t : a.outgoing(p))
            if (a.transition(t).to == q && (!unobservable_only || !a.observable(t))) return t;
        throw std::logic_error("no transition between consecutive lasso states");
    };
    Lasso l;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) l.stem.push_back(arc_between((*path)[i], (*path)[i + 1]));
    for (std::size_t i = 0; i + 1 < cycle->size(); ++i) l.cycle.push_back(arc_between((*cycle)[i], (*cycle)[i + 1]));
    return l;
}

StateSet reachable_states(const WeightedAutomaton& a) {
    auto seen = graph::reachable_from(state_graph(a, false), a.initial_states());
    StateSet out;
    for (StateId q = 0; q < seen.size(); ++q)
        if (seen[q]) out.push_back(q);
    return out;
}

StructureReport structure_report(const WeightedAutomaton& a) {
    StructureReport r;
    r.reachable_states = reachable_states(a);
    std::vector<bool> reach(a.num_states(), false);
    for (auto q : r.reachable_states) reach[q] = true;

    r.deadlock_free = true;
    for (auto q : r.reachable_states)
        if (a.outgoing(q).empty()) r.deadlock_free = false;

    auto unobs = graph::induced(state_graph(a, true), reach);
    auto scc = graph::strongly_connected_components(unobs);
    r.divergence_free = true;
    for (auto q : r.reachable_states)
        if (scc.on_cycle[q]) r.divergence_free = false;

    r.all_observable = !a.has_unobservable_transitions();

    r.deterministic = a.initial().size() == 1;
    std::set<std::pair<StateId, EventId>> seen;
    for (const auto& t : a.transitions())
        if (!seen.emplace(t.from, t.event).second) r.deterministic = false;

    // Twin-run product: (p, p', runs differ so far). Ambiguous iff some (q, q, true)
    // is reachable after at least one step.
    const std::size_t n = a.num_states();
    auto code = [n](StateId p, StateId q, bool d) { return (p * n + q) * 2 + (d ? 1 : 0); };
    std::vector<bool> visited(n * n * 2, false);
    std::vector<std::tuple<StateId, StateId, bool>> work;
    for (auto p : a.initial_states())
        for (auto q : a.initial_states()) {
            visited[code(p, q, p != q)] = true;
            work.emplace_back(p, q, p != q);
        }
    r.unambiguous_checked_to_bound = true;
    while (!work.empty() && r.unambiguous_checked_to_bound) {
        auto [p, q, d] = work.back();
        work.pop_back();
        for (auto t1 : a.outgoing(p))
            for (auto t2 : a.outgoing(q)) {
                const auto &x = a.transition(t1), &y = a.transition(t2);
                if (x.event != y.event) continue;
                bool nd = d || x.to != y.to;
                if (nd && x.to == y.to) {
                    r.unambiguous_checked_to_bound = false;
                    break;
                }
                auto c = code(x.to, y.to, nd);
                if (!visited[c]) {
                    visited[c] = true;
                    work.emplace_back(x.to, y.to, nd);
                }
            }
    }
    return r;
}

}  // namespace wdetect
