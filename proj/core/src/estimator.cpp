#include "wdetect/estimator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wdetect {

namespace {

std::int64_t l1(const IntVec& v) {
    std::int64_t s = 0;
    for (auto x : v) s = checked_add(s, x < 0 ? -x : x);
    return s;
}

bool witness_less(const IntVec& a, const IntVec& b) {
    auto na = l1(a), nb = l1(b);
    if (na != nb) return na < nb;
    // prefer nonnegative entries on ties, matching the scalar rule
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return (a[i] >= 0) != (b[i] >= 0) ? a[i] >= 0 : a[i] < b[i];
    return false;
}

StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void merge_into(LabelCell& into, const LabelCell& from) {
    into.exact = into.exact && from.exact;
    if (!into.vector_valued) {
        into.scalar = into.scalar | from.scalar;
        return;
    }
    std::vector<IntVec> merged;
    std::set_union(into.points.begin(), into.points.end(), from.points.begin(), from.points.end(),
                   std::back_inserter(merged));
    into.points = std::move(merged);
}

}  // namespace

bool LabelCell::contains(const IntVec& t) const {
    if (!vector_valued) return t.size() == 1 && scalar.contains(t[0]);
    return std::binary_search(points.begin(), points.end(), t);
}

std::optional<IntVec> LabelCell::witness() const {
    if (!vector_valued) {
        auto w = scalar.min_abs_witness();
        if (!w) return std::nullopt;
        return IntVec{*w};
    }
    if (points.empty()) return std::nullopt;
    return *std::min_element(points.begin(), points.end(), witness_less);
}

std::string LabelCell::str() const {
    if (!vector_valued) return scalar.str();
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < points.size(); ++i) os << (i ? ", " : "") << to_string(points[i]);
    os << '}';
    return os.str();
}

std::vector<SuccessorCell> successor_cells(const WeightedAutomaton& a, const ReachTables& reach, const StateSet& x,
                                           const std::string& sigma) {
    const bool scalar = a.dimension() == 1;
    // Weights with which each direct target is entered.
    std::map<StateId, EPSet> by_target;
    std::map<StateId, std::set<IntVec>> points_by_target;
    for (auto q : x)
        for (StateId pre = 0; pre < a.num_states(); ++pre) {
            if (!reach.reachable(q, pre)) continue;
            for (auto t : a.outgoing(pre)) {
                if (a.label(t) != sigma) continue;
                const auto& w = a.int_weight(t);
                const auto to = a.transition(t).to;
                if (scalar) {
                    auto& s = by_target[to];
                    s = s | reach.scalar(q, pre).shift(w[0]);
                } else {
                    auto& s = points_by_target[to];
                    for (const auto& v : reach.vectors(q, pre)) s.insert(add(v, w));
                }
            }
        }

    std::vector<SuccessorCell> cells;
    auto add_cell = [&](StateSet target, LabelCell cell) {
        for (auto& c : cells)
            if (c.target == target) {
                merge_into(c.cell, cell);
                return;
            }
        cells.push_back({std::move(target), std::move(cell), {}});
    };

    if (scalar) {
        // Identical weight sets act as one target group.
        std::vector<std::pair<EPSet, StateSet>> groups;
        for (const auto& [q2, s] : by_target) {
            if (s.is_empty()) continue;
            const auto& closure = reach.zero_closure(q2);
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == s; });
            if (it == groups.end())
                groups.emplace_back(s, closure);
            else
                it->second = set_union(it->second, closure);
        }
        std::vector<std::pair<EPSet, StateSet>> parts{{EPSet::all(), {}}};
        for (const auto& [s, closure] : groups) {
            std::vector<std::pair<EPSet, StateSet>> next;
            for (auto& [cell, target] : parts) {
                auto in = cell & s;
                auto out = cell - s;
                if (!in.is_empty()) next.emplace_back(std::move(in), set_union(target, closure));
                if (!out.is_empty()) next.emplace_back(std::move(out), target);
            }
            parts = std::move(next);
        }
        for (auto& [cell, target] : parts) {
            if (target.empty()) continue;
            LabelCell lc;
            lc.scalar = std::move(cell);
            add_cell(std::move(target), std::move(lc));
        }
    } else {
        std::map<IntVec, StateSet> targets_of;
        for (const auto& [q2, pts] : points_by_target)
            for (const auto& p : pts) targets_of[p] = set_union(targets_of[p], reach.zero_closure(q2));
        for (auto& [p, target] : targets_of) {
            LabelCell lc;
            lc.vector_valued = true;
            lc.exact = reach.exact();
            lc.points = {p};
            add_cell(std::move(target), std::move(lc));
        }
    }
    for (auto& c : cells) c.witness = *c.cell.witness();
    std::sort(cells.begin(), cells.end(), [](const auto& l, const auto& r) { return l.witness < r.witness; });
    return cells;
}

std::optional<std::size_t> EstimatorAutomaton::find(const StateSet& x) const {
    auto it = std::find(states.begin(), states.end(), x);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

namespace {

EstimatorAutomaton build(const WeightedAutomaton& a, const ReachTables& reach, EstimatorAutomaton::Kind kind) {
    if (!a.is_normalized() || !a.is_integral())
        throw std::invalid_argument("estimators need a normalized automaton with integer weights");
    EstimatorAutomaton ea;
    ea.kind = kind;
    std::map<StateSet, std::size_t> index;
    std::deque<std::size_t> queue;
    auto intern = [&](const StateSet& x) {
        auto [it, fresh] = index.emplace(x, ea.states.size());
        if (fresh) {
            ea.states.push_back(x);
            ea.out.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(instantaneous_closure(a, a.initial_states()));
    const auto labels = a.labels();
    while (!queue.empty()) {
        const auto from = queue.front();
        queue.pop_front();
        const StateSet x = ea.states[from];
        for (const auto& sigma : labels) {
            auto cells = successor_cells(a, reach, x, sigma);
            std::vector<std::pair<StateSet, LabelCell>> emitted;
            auto emit = [&](const StateSet& y, const LabelCell& cell) {
                for (auto& [t, c] : emitted)
                    if (t == y) {
                        merge_into(c, cell);
                        return;
                    }
                emitted.emplace_back(y, cell);
            };
            for (const auto& c : cells) {
                if (kind == EstimatorAutomaton::Kind::observer || c.target.size() == 1) {
                    emit(c.target, c.cell);
                    continue;
                }
                for (std::size_t i = 0; i < c.target.size(); ++i)
                    for (std::size_t j = i + 1; j < c.target.size(); ++j) emit({c.target[i], c.target[j]}, c.cell);
            }
            std::vector<EstimatorAutomaton::Edge> edges;
            for (auto& [y, cell] : emitted) {
                if (!cell.exact) ea.exact = false;
                auto w = *cell.witness();
                edges.push_back({from, sigma, std::move(w), std::move(cell), intern(y)});
            }
            std::stable_sort(edges.begin(), edges.end(),
                             [](const auto& l, const auto& r) { return l.witness < r.witness; });
            for (auto& e : edges) {
                ea.out[from].push_back(ea.edges.size());
                ea.edges.push_back(std::move(e));
            }
        }
    }
    return ea;
}

}  // namespace

EstimatorAutomaton build_observer(const WeightedAutomaton& a, const ReachTables& reach) {
    return build(a, reach, EstimatorAutomaton::Kind::observer);
}

EstimatorAutomaton build_detector(const WeightedAutomaton& a, const ReachTables& reach) {
    return build(a, reach, EstimatorAutomaton::Kind::detector);
}

EstimatorAutomaton build_observer(const WeightedAutomaton& a) { return build_observer(a, ReachTables(a)); }

EstimatorAutomaton build_detector(const WeightedAutomaton& a) { return build_detector(a, ReachTables(a)); }

}  // namespace wdetect
