#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "support.hpp"
#include "wdetect/corpus.hpp"
#include "wdetect/oracle.hpp"
#include "wdetect/self_composition.hpp"

using namespace wdetect;

namespace {

using EdgeKey = std::tuple<std::string, std::string, std::string, std::string>;  // from, left ev, right ev, to

std::string pair_name(const WeightedAutomaton& a, const SelfComposition::Pair& p) {
    return "(" + a.state_name(p.first) + "," + a.state_name(p.second) + ")";
}

std::multiset<EdgeKey> edge_keys(const WeightedAutomaton& a, const SelfComposition& cc) {
    std::multiset<EdgeKey> out;
    for (const auto& e : cc.edges)
        out.emplace(pair_name(a, cc.states[e.from]), a.event(e.left_event).name, a.event(e.right_event).name,
                    pair_name(a, cc.states[e.to]));
    return out;
}

std::set<std::string> state_names(const WeightedAutomaton& a, const SelfComposition& cc) {
    std::set<std::string> out;
    for (const auto& p : cc.states) out.insert(pair_name(a, p));
    return out;
}

WeightVector path_weight(const WeightedAutomaton& a, const std::vector<TransitionId>& path) {
    WeightVector w(a.dimension());
    for (auto t : path) w = w + a.transition(t).weight;
    return w;
}

void check_realisations(const WeightedAutomaton& a, const SelfComposition& cc) {
    ReachTables reach(a);
    for (std::size_t i = 0; i < cc.edges.size(); ++i) {
        const auto& e = cc.edges[i];
        if (e.uncertain) continue;
        auto r = realise_edge(a, reach, cc, i);
        auto walk = [&](const std::vector<TransitionId>& path, StateId from, StateId to) {
            StateId at = from;
            std::size_t observable = 0;
            for (auto t : path) {
                REQUIRE(a.transition(t).from == at);
                at = a.transition(t).to;
                if (a.observable(t)) ++observable;
            }
            CHECK(at == to);
            CHECK(observable == 1);
        };
        walk(r.left, cc.states[e.from].first, cc.states[e.to].first);
        walk(r.right, cc.states[e.from].second, cc.states[e.to].second);
        CHECK(path_weight(a, r.left) == path_weight(a, r.right));
        CHECK(path_weight(a, r.left) == WeightVector::from_ints(e.weight));
    }
}

}  // namespace

TEST_SUITE("self_composition") {

TEST_CASE("CC(A1) has the merged (b,b) transitions") {
    auto a = testsupport::prepared_fixture("A1");
    auto cc = build_self_composition(a);
    CHECK(cc.complete);
    CHECK(state_names(a, cc) ==
          std::set<std::string>{"(q0,q0)", "(q1,q1)", "(q1,q2)", "(q2,q1)", "(q2,q2)", "(q3,q3)", "(q4,q4)"});
    std::multiset<EdgeKey> expected{
        {"(q0,q0)", "a", "a", "(q1,q1)"}, {"(q0,q0)", "a", "a", "(q1,q2)"}, {"(q0,q0)", "a", "a", "(q2,q1)"},
        {"(q0,q0)", "a", "a", "(q2,q2)"}, {"(q1,q1)", "b", "b", "(q3,q3)"}, {"(q1,q2)", "b", "b", "(q3,q3)"},
        {"(q2,q1)", "b", "b", "(q3,q3)"}, {"(q2,q2)", "b", "b", "(q3,q3)"}, {"(q3,q3)", "a", "a", "(q4,q4)"},
        {"(q4,q4)", "a", "a", "(q4,q4)"}};
    CHECK(edge_keys(a, cc) == expected);
    REQUIRE(cc.initial.size() == 1);
    CHECK(pair_name(a, cc.states[cc.initial[0]]) == "(q0,q0)");
    for (const auto& e : cc.edges) CHECK(e.label == "ρ");
    auto q33 = *cc.find({*a.find_state("q3"), *a.find_state("q3")});
    for (auto i : cc.out[q33]) CHECK(cc.edges[i].weight == IntVec{2});
    check_realisations(a, cc);
}

TEST_CASE("CC(A0) keeps the two split pairs with their loops") {
    auto a = testsupport::prepared_fixture("A0");
    auto cc = build_self_composition(a);
    CHECK(state_names(a, cc) == std::set<std::string>{"(q0,q0)", "(q3,q3)", "(q3,q4)", "(q4,q3)", "(q4,q4)"});
    std::multiset<EdgeKey> expected{
        {"(q0,q0)", "a", "a", "(q3,q3)"}, {"(q0,q0)", "a", "a", "(q3,q4)"}, {"(q0,q0)", "a", "a", "(q4,q3)"},
        {"(q0,q0)", "a", "a", "(q4,q4)"}, {"(q3,q3)", "a", "a", "(q3,q3)"}, {"(q3,q4)", "a", "a", "(q3,q4)"},
        {"(q4,q3)", "a", "a", "(q4,q3)"}, {"(q4,q4)", "a", "a", "(q4,q4)"}};
    CHECK(edge_keys(a, cc) == expected);
    auto q0 = *cc.find({*a.find_state("q0"), *a.find_state("q0")});
    auto q34 = *cc.find({*a.find_state("q3"), *a.find_state("q4")});
    for (auto i : cc.out[q0])
        if (cc.edges[i].to == q34) CHECK(cc.edges[i].weight == IntVec{11});
    check_realisations(a, cc);
}

TEST_CASE("all-observable automata use synchronised moves only") {
    AutomatonBuilder b(1);
    b.state("p").state("q").event("a", "a");
    b.initial("p", WeightVector(1));
    b.transition("p", "a", "q", IntVec{1});
    auto a = b.build();
    auto cc = build_self_composition(a);
    CHECK(cc.states.size() == 2);
    REQUIRE(cc.edges.size() == 1);
    CHECK(cc.edges[0].weight == IntVec{1});
    CHECK(cc.complete);
}

TEST_CASE("mirror symmetry and realisations on random automata") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomOptions opt;
        opt.k = seed % 3 == 0 ? 2 : 1;
        auto a = normalize(random_automaton(seed, opt));
        auto cc = build_self_composition(a);
        std::multiset<std::tuple<StateId, StateId, EventId, EventId, StateId, StateId>> fwd, mirrored;
        for (const auto& e : cc.edges) {
            auto [p, q] = cc.states[e.from];
            auto [r, s] = cc.states[e.to];
            fwd.emplace(p, q, e.left_event, e.right_event, r, s);
            mirrored.emplace(q, p, e.right_event, e.left_event, s, r);
            CHECK(a.event(e.left_event).label == a.event(e.right_event).label);
        }
        CHECK(fwd == mirrored);
        for (const auto& p : cc.states) CHECK(cc.find({p.second, p.first}));
        check_realisations(a, cc);
    }
}

TEST_CASE("edges agree with bounded run enumeration") {
    // Every pair of equally observed runs of length <= 4 must show up as a path in CC.
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        auto a = normalize(random_automaton(seed));
        auto cc = build_self_composition(a);
        auto runs = oracle_runs(a, 4);
        std::set<SelfComposition::Pair> reached(cc.states.begin(), cc.states.end());
        for (const auto& r1 : runs)
            for (const auto& r2 : runs) {
                if (r1.observation != r2.observation || r1.observation.empty()) continue;
                auto end = [&](const BoundedRun& r) {
                    // state right after the last observable transition
                    StateId at = r.start;
                    StateId last = r.start;
                    for (auto t : r.path) {
                        at = a.transition(t).to;
                        if (a.observable(t)) last = at;
                    }
                    return last;
                };
                CHECK(reached.count({end(r1), end(r2)}) == 1);
            }
    }
}

TEST_CASE("strong detectability from the self-composition") {
    auto a1 = testsupport::prepared_fixture("A1");
    auto v1 = check_sd(a1, build_self_composition(a1));
    CHECK(v1.status == Status::holds);

    auto a0 = testsupport::prepared_fixture("A0");
    auto cc0 = build_self_composition(a0);
    auto v0 = check_sd(a0, cc0);
    CHECK(v0.status == Status::fails);
    REQUIRE(v0.pair);
    auto split = cc0.states[v0.pair->split_pair];
    CHECK(split.first != split.second);
    CHECK_FALSE(v0.pair->cycle.empty());

    auto yes = subset_sum_automaton({2, 3}, 5);
    CHECK(check_sd(yes, build_self_composition(yes)).status == Status::fails);
    auto no = subset_sum_automaton({2, 4}, 5);
    CHECK(check_sd(no, build_self_composition(no)).status == Status::holds);
}

}  // TEST_SUITE
