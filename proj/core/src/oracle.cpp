#include "wdetect/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wdetect/graph_util.hpp"

namespace wdetect {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

constexpr std::size_t kMaxConfigurations = 4'000'000;

/// Successor chain over (state, accumulated weight) configurations.
class Chain {
public:
    Chain(const WeightedAutomaton& a, const OracleOptions& opt) : a_(a) {
        Rational wmax(1);
        for (TransitionId t = 0; t < a.num_transitions(); ++t)
            if (!a.observable(t))
                for (const auto& x : a.transition(t).weight.entries()) wmax = std::max(wmax, abs(x));
        const auto n = static_cast<std::int64_t>(a.num_states());
        clamp_ = opt.clamp > 0 ? Rational(opt.clamp) : wmax * Rational(n * n + 1);
    }

    StateSet start() const { return instantaneous_closure(a_, a_.initial_states()); }

    /// States entered by an unobservable walk followed by one sigma-transition, the
    /// whole of weight target - (source weight), then closed.
    StateSet step(const std::vector<std::pair<StateId, WeightVector>>& sources, const std::string& sigma,
                  const WeightVector& target) const {
        const auto k = target.dimension();
        std::set<std::pair<StateId, WeightVector>> seen;
        std::deque<std::pair<StateId, WeightVector>> queue;
        std::vector<Rational> lo(k), hi(k);
        bool first = true;
        for (const auto& [q, w] : sources)
            for (std::size_t i = 0; i < k; ++i) {
                auto l = std::min(w[i], target[i]) - clamp_;
                auto h = std::max(w[i], target[i]) + clamp_;
                lo[i] = first ? l : std::min(lo[i], l);
                hi[i] = first ? h : std::max(hi[i], h);
                if (i + 1 == k) first = false;
            }
        for (const auto& s : sources)
            if (seen.insert(s).second) queue.push_back(s);
        StateSet hits;
        while (!queue.empty()) {
            auto [q, w] = queue.front();
            queue.pop_front();
            for (auto t : a_.outgoing(q)) {
                const auto& tr = a_.transition(t);
                auto next = w + tr.weight;
                if (a_.observable(t)) {
                    if (*a_.label(t) == sigma && next == target) hits.push_back(tr.to);
                    continue;
                }
                bool inside = true;
                for (std::size_t i = 0; i < k && inside; ++i) inside = lo[i] <= next[i] && next[i] <= hi[i];
                if (!inside) continue;
                if (seen.emplace(tr.to, next).second) {
                    if (seen.size() > kMaxConfigurations)
                        throw std::length_error("oracle configuration space exceeds its limit");
                    queue.emplace_back(tr.to, std::move(next));
                }
            }
        }
        return instantaneous_closure(a_, make_state_set(std::move(hits)));
    }

    /// Estimates after each observation step (empty sets once the observation is impossible).
    std::vector<StateSet> along(const Observation& obs) const {
        std::vector<StateSet> out;
        std::vector<std::pair<StateId, WeightVector>> sources;
        for (const auto& [q, w] : a_.initial()) sources.emplace_back(q, w);
        // zero-weight closure of initial states keeps their initial weight
        std::vector<std::pair<StateId, WeightVector>> closed;
        for (const auto& [q, w] : sources)
            for (auto r : instantaneous_closure(a_, {q})) closed.emplace_back(r, w);
        sources = std::move(closed);
        for (const auto& step_obs : obs) {
            auto x = step(sources, step_obs.label, step_obs.weight);
            sources.clear();
            for (auto q : x) sources.emplace_back(q, step_obs.weight);
            out.push_back(std::move(x));
        }
        return out;
    }

private:
    const WeightedAutomaton& a_;
    Rational clamp_;
};

void check_dimension(const WeightedAutomaton& a, const Observation& obs) {
    for (const auto& s : obs)
        if (s.weight.dimension() != a.dimension())
            throw std::invalid_argument("observation weight has dimension " + std::to_string(s.weight.dimension()) +
                                        ", automaton has " + std::to_string(a.dimension()));
}

}  // namespace

Observation parse_observation(const std::string& text, std::size_t k) {
    Observation out;
    std::string rest = trim(text);
    if (rest.empty()) return out;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.size() < 2 || item.front() != '(' || item.back() != ')')
            throw std::invalid_argument("observation step must look like (label,weight): '" + item + "'");
        std::vector<std::string> fields;
        std::stringstream inner(item.substr(1, item.size() - 2));
        std::string f;
        while (std::getline(inner, f, ',')) fields.push_back(trim(f));
        if (fields.size() != k + 1)
            throw std::invalid_argument("observation step '" + item + "' needs a label and " + std::to_string(k) +
                                        " weight entries");
        if (fields[0].empty()) throw std::invalid_argument("empty label in '" + item + "'");
        std::vector<Rational> w;
        for (std::size_t i = 1; i <= k; ++i) w.push_back(Rational::parse(fields[i]));
        out.push_back({fields[0], WeightVector(std::move(w))});
    }
    return out;
}

std::string to_string(const Observation& obs) {
    std::string out;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (i) out += ';';
        out += '(' + obs[i].label;
        for (const auto& x : obs[i].weight.entries()) out += ',' + x.str();
        out += ')';
    }
    return out;
}

StateSet oracle_estimate(const WeightedAutomaton& a, const Observation& obs, const OracleOptions& opt) {
    check_dimension(a, obs);
    Chain chain(a, opt);
    if (obs.empty()) return chain.start();
    return chain.along(obs).back();
}

StateSet oracle_estimate_by_runs(const WeightedAutomaton& a, const Observation& obs, std::size_t horizon) {
    check_dimension(a, obs);
    std::set<StateId> found;
    std::function<void(StateId, const WeightVector&, std::size_t, std::size_t)> dfs =
        [&](StateId q, const WeightVector& acc, std::size_t i, std::size_t depth) {
            if (i == obs.size()) found.insert(q);
            if (depth == horizon) return;
            for (auto t : a.outgoing(q)) {
                const auto& tr = a.transition(t);
                if (i == obs.size()) {
                    // only instantaneous unobservable moves after the last observation
                    if (!a.observable(t) && tr.weight.is_zero()) dfs(tr.to, acc, i, depth + 1);
                    continue;
                }
                auto next = acc + tr.weight;
                if (!a.observable(t))
                    dfs(tr.to, next, i, depth + 1);
                else if (*a.label(t) == obs[i].label && next == obs[i].weight)
                    dfs(tr.to, next, i + 1, depth + 1);
            }
        };
    for (const auto& [q, w] : a.initial()) dfs(q, w, 0, 0);
    return StateSet(found.begin(), found.end());
}

Observation observe(const WeightedAutomaton& a, StateId start, const std::vector<TransitionId>& path) {
    WeightVector acc(a.dimension());
    for (const auto& [q, w] : a.initial())
        if (q == start) acc = w;
    Observation out;
    for (auto t : path) {
        acc = acc + a.transition(t).weight;
        if (a.observable(t)) out.push_back({*a.label(t), acc});
    }
    return out;
}

std::vector<BoundedRun> oracle_runs(const WeightedAutomaton& a, std::size_t horizon, const OracleOptions& opt) {
    if (horizon > opt.max_horizon)
        throw std::invalid_argument("horizon " + std::to_string(horizon) + " exceeds the configured maximum " +
                                    std::to_string(opt.max_horizon));
    std::vector<BoundedRun> out;
    BoundedRun cur;
    std::function<void(StateId, const WeightVector&)> dfs = [&](StateId q, const WeightVector& acc) {
        out.push_back(cur);
        if (cur.path.size() == horizon) return;
        for (auto t : a.outgoing(q)) {
            auto next = acc + a.transition(t).weight;
            cur.path.push_back(t);
            cur.weighted_word.push_back(next);
            if (a.observable(t)) cur.observation.push_back({*a.label(t), next});
            dfs(a.transition(t).to, next);
            if (a.observable(t)) cur.observation.pop_back();
            cur.weighted_word.pop_back();
            cur.path.pop_back();
        }
    };
    for (const auto& [q, w] : a.initial()) {
        cur = BoundedRun{q, {}, {}, {}};
        dfs(q, w);
    }
    return out;
}

namespace {

/// Paths of at most max_len transitions from `from`, shortest first.
std::vector<std::vector<TransitionId>> paths_from(const WeightedAutomaton& a, StateId from, std::size_t max_len,
                                                  std::optional<StateId> must_end = std::nullopt) {
    std::vector<std::vector<TransitionId>> out;
    std::vector<std::pair<StateId, std::vector<TransitionId>>> layer{{from, {}}};
    for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
        std::vector<std::pair<StateId, std::vector<TransitionId>>> next;
        for (auto& [q, p] : layer) {
            if (!must_end || (q == *must_end && !p.empty())) out.push_back(p);
            if (len == max_len) continue;
            for (auto t : a.outgoing(q)) {
                auto np = p;
                np.push_back(t);
                next.emplace_back(a.transition(t).to, std::move(np));
            }
        }
        layer = std::move(next);
    }
    return out;
}

StateId end_of(const WeightedAutomaton& a, StateId start, const std::vector<TransitionId>& p) {
    return p.empty() ? start : a.transition(p.back()).to;
}

std::size_t observable_count(const WeightedAutomaton& a, const std::vector<TransitionId>& p) {
    return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [&](auto t) { return a.observable(t); }));
}

std::vector<TransitionId> pumped(const std::vector<TransitionId>& stem, const std::vector<TransitionId>& cycle,
                                 int n) {
    auto p = stem;
    for (int i = 0; i < n; ++i) p.insert(p.end(), cycle.begin(), cycle.end());
    return p;
}

bool has_reachable_cycle(const WeightedAutomaton& a, bool unobservable_cycle) {
    const std::size_t n = a.num_states();
    graph::Adjacency all(n), sub(n);
    for (TransitionId t = 0; t < a.num_transitions(); ++t) {
        all[a.transition(t).from].push_back(a.transition(t).to);
        if (!unobservable_cycle || !a.observable(t)) sub[a.transition(t).from].push_back(a.transition(t).to);
    }
    auto live = graph::reachable_from(all, a.initial_states());
    auto scc = graph::strongly_connected_components(sub);
    for (std::size_t q = 0; q < n; ++q)
        if (live[q] && scc.on_cycle[q]) return true;
    return false;
}

}  // namespace

std::optional<Counterexample> oracle_falsify(const WeightedAutomaton& a, Property p, std::size_t horizon,
                                             const OracleOptions& opt) {
    Chain chain(a, opt);
    std::map<StateId, std::vector<std::vector<TransitionId>>> cycles;
    auto cycles_at = [&](StateId q) -> const std::vector<std::vector<TransitionId>>& {
        auto it = cycles.find(q);
        if (it == cycles.end()) it = cycles.emplace(q, paths_from(a, q, horizon, q)).first;
        return it->second;
    };
    auto singleton = [](const StateSet& x) { return x.size() == 1; };
    const bool existential = p == Property::wd || p == Property::wpd;
    if (existential && (!has_reachable_cycle(a, false) || has_reachable_cycle(a, true))) return std::nullopt;

    for (const auto& [start, w0] : a.initial()) {
        (void)w0;
        for (const auto& stem : paths_from(a, start, horizon)) {
            const auto q = end_of(a, start, stem);
            const auto stem_obs = observable_count(a, stem);
            for (const auto& cycle : cycles_at(q)) {
                const auto cyc_obs = observable_count(a, cycle);
                std::vector<std::vector<StateSet>> runs;  // estimates for n = 1..3
                for (int n = 1; n <= 3; ++n) runs.push_back(chain.along(observe(a, start, pumped(stem, cycle, n))));
                auto tail_all = [&](auto pred) {
                    for (const auto& est : runs)
                        for (std::size_t i = stem_obs; i < est.size(); ++i)
                            if (!pred(est[i])) return false;
                    return true;
                };
                auto every_copy_has = [&](auto pred) {
                    for (int n = 1; n <= 3; ++n)
                        for (int c = 0; c < n; ++c) {
                            bool hit = false;
                            for (std::size_t i = stem_obs + c * cyc_obs; i < stem_obs + (c + 1) * cyc_obs; ++i)
                                hit = hit || pred(runs[n - 1][i]);
                            if (!hit) return false;
                        }
                    return true;
                };
                bool violates = false;
                switch (p) {
                    case Property::sd:
                        violates = cyc_obs > 0 && std::all_of(runs.begin(), runs.end(), [](const auto& est) {
                                       return !est.empty() && est.back().size() > 1;
                                   });
                        break;
                    case Property::spd:
                        if (cyc_obs == 0) {
                            auto last = stem_obs == 0 ? chain.start() : runs[0][stem_obs - 1];
                            violates = last.size() > 1;
                        } else {
                            violates = tail_all([](const StateSet& x) { return x.size() > 1; });
                        }
                        break;
                    case Property::wd:
                        // a lasso that is eventually singleton shows WD holds
                        if (cyc_obs > 0 && tail_all(singleton)) return std::nullopt;
                        break;
                    case Property::wpd:
                        if (cyc_obs > 0 && every_copy_has(singleton)) return std::nullopt;
                        break;
                }
                if (violates) {
                    Counterexample cx{p, "lasso", start, stem, cycle, observe(a, start, pumped(stem, cycle, 3)),
                                      runs[2]};
                    return cx;
                }
            }
        }
    }
    if (!existential) return std::nullopt;
    Counterexample cx;
    cx.property = p;
    cx.kind = "bounded";
    return cx;
}

}  // namespace wdetect
