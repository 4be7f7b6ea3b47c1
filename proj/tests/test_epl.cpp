#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "wdetect/corpus.hpp"
#include "wdetect/epl.hpp"
#include "wdetect/self_composition.hpp"

using namespace wdetect;

namespace {

// Configurations (vertex, weight) reachable from u with every partial sum kept
// inside [-clamp, clamp]^k. Small graphs only.
std::set<std::pair<std::size_t, IntVec>> clamped_configs(const WeightedDigraph& g, std::size_t u,
                                                         std::int64_t clamp) {
    std::set<std::pair<std::size_t, IntVec>> seen{{u, IntVec(g.dimension(), 0)}};
    std::vector<std::pair<std::size_t, IntVec>> work(seen.begin(), seen.end());
    while (!work.empty()) {
        auto [x, w] = work.back();
        work.pop_back();
        for (auto id : g.out(x)) {
            auto nw = add(w, g.arc(id).weight);
            bool inside = true;
            for (auto c : nw) inside = inside && c >= -clamp && c <= clamp;
            if (inside && seen.emplace(g.arc(id).head, nw).second) work.emplace_back(g.arc(id).head, nw);
        }
    }
    return seen;
}

std::int64_t max_abs_weight(const WeightedDigraph& g) {
    std::int64_t m = 1;
    for (const auto& a : g.arcs())
        for (auto c : a.weight) m = std::max(m, c < 0 ? -c : c);
    return m;
}

void check_walk(const WeightedDigraph& g, const Walk& w, std::size_t u, std::size_t v, const IntVec& z) {
    CHECK(walk_connects(g, w, u, v));
    CHECK(walk_weight(g, w) == z);
}

}  // namespace

TEST_SUITE("epl") {

TEST_CASE("empty walk on an isolated vertex") {
    WeightedDigraph g(1, 1);
    CHECK(weight_set(g, 0, 0) == EPSet::singleton(0));
    auto q = has_path_with_weight(g, 0, 0, {0});
    CHECK(q.answer == Answer::yes);
    REQUIRE(q.witness);
    CHECK(q.witness->arcs.empty());
}

TEST_CASE("vertex without outgoing arcs reaches nothing else") {
    WeightedDigraph g(1, 2);
    g.add_arc(1, 0, {1});
    CHECK(weight_set(g, 0, 1).is_empty());
    for (std::int64_t z = -3; z <= 3; ++z) CHECK(has_path_with_weight(g, 0, 1, {z}).answer == Answer::no);
    WeightedDigraph g2(2, 2);
    CHECK(has_path_with_weight(g2, 0, 1, {0, 0}).answer == Answer::no);
}

TEST_CASE("self-loop of weight one gives the naturals") {
    auto a1 = load_fixture("A1").automaton;
    auto g = unobservable_digraph(a1);
    auto q1 = *a1.find_state("q1");
    auto s = weight_set(g, q1, q1);
    CHECK(s == EPSet::at_least(0));
    for (const auto& w : testsupport::walk_weights(g, q1, q1, 12)) CHECK(s.contains(w[0]));
}

TEST_CASE("cycles reachable only through a detour are counted") {
    // u -> v directly with weight 0; u -> w -> u has weight 10 and w carries a 1-loop.
    WeightedDigraph g(1, 3);
    const std::size_t u = 0, v = 1, w = 2;
    g.add_arc(u, v, {0});
    g.add_arc(u, w, {5});
    g.add_arc(w, u, {5});
    g.add_arc(w, w, {1});
    auto s = weight_set(g, u, v);
    CHECK(s == (EPSet::singleton(0) | EPSet::at_least(10)));
    auto q = has_path_with_weight(g, u, v, {13});
    REQUIRE(q.answer == Answer::yes);
    check_walk(g, *q.witness, u, v, {13});
    CHECK(has_path_with_weight(g, u, v, {7}).answer == Answer::no);
    WeightSetTable t(g);
    CHECK(t(u, v) == s);
    CHECK(t(w, w) == (EPSet::singleton(0) | EPSet::at_least(1)));
}

TEST_CASE("mixed signs span a lattice") {
    WeightedDigraph g(1, 1);
    g.add_arc(0, 0, {6});
    g.add_arc(0, 0, {-4});
    CHECK(weight_set(g, 0, 0) == EPSet::residue_class(0, 2));
}

TEST_CASE("product graph of A1: right move around the u-loop") {
    auto a1 = load_fixture("A1").automaton;
    auto p = product_unobservable_digraph(a1);
    const auto n = a1.num_states();
    auto q1 = *a1.find_state("q1"), q2 = *a1.find_state("q2");
    const auto v = q1 * n + q2;
    auto q = has_path_with_weight(p, v, v, {-1});
    REQUIRE(q.answer == Answer::yes);
    check_walk(p, *q.witness, v, v, {-1});
    REQUIRE(q.witness->arcs.size() == 1);
    CHECK(a1.transition(p.arc(q.witness->arcs[0]).label).from == q2);
    CHECK(weight_set(p, v, v) == EPSet::all());
}

TEST_CASE("product graph of A0: the two unobservable branches meet at weight zero") {
    auto a0 = load_fixture("A0").automaton;
    auto p = product_unobservable_digraph(a0);
    const auto n = a0.num_states();
    auto q0 = *a0.find_state("q0"), q1 = *a0.find_state("q1"), q2 = *a0.find_state("q2");
    auto s = weight_set(p, q0 * n + q0, q1 * n + q2);
    CHECK(s.contains(0));
    CHECK(s == EPSet::at_most(9));
    auto q = has_path_with_weight(p, q0 * n + q0, q1 * n + q2, {0});
    REQUIRE(q.answer == Answer::yes);
    check_walk(p, *q.witness, q0 * n + q0, q1 * n + q2, {0});
}

TEST_CASE("two-dimensional chain") {
    WeightedDigraph g(2, 3);
    g.add_arc(0, 1, {1, 0});
    g.add_arc(1, 2, {0, 1});
    auto q = has_path_with_weight(g, 0, 2, {1, 1});
    REQUIRE(q.answer == Answer::yes);
    check_walk(g, *q.witness, 0, 2, {1, 1});
    CHECK(has_path_with_weight(g, 0, 2, {1, 0}).answer == Answer::no);
    auto fin = acyclic_weight_sets(g);
    REQUIRE(fin);
    CHECK((*fin)[0][2] == std::vector<IntVec>{{1, 1}});
    CHECK((*fin)[0][0] == std::vector<IntVec>{{0, 0}});
    g.add_arc(2, 0, {0, 0});
    CHECK_FALSE(acyclic_weight_sets(g));
}

TEST_CASE("two-dimensional cycles with cancelling coordinates") {
    WeightedDigraph g(2, 2);
    g.add_arc(0, 0, {1, -1});
    g.add_arc(0, 1, {0, 0});
    g.add_arc(1, 1, {-2, 2});
    auto yes = has_path_with_weight(g, 0, 1, {3, -3});
    REQUIRE(yes.answer == Answer::yes);
    check_walk(g, *yes.witness, 0, 1, {3, -3});
    auto zero = has_path_with_weight(g, 0, 1, {-4, 4});
    REQUIRE(zero.answer == Answer::yes);
    CHECK(has_path_with_weight(g, 0, 1, {1, 0}).answer == Answer::no);
}

TEST_CASE("a tiny budget yields unknown rather than a wrong answer") {
    WeightedDigraph g(2, 2);
    g.add_arc(0, 0, {3, 1});
    g.add_arc(0, 0, {-2, 1});
    g.add_arc(0, 1, {0, 0});
    auto q = has_path_with_weight(g, 0, 1, {7, 9}, SolverBudget{2});
    CHECK(q.answer != Answer::no);
    auto full = has_path_with_weight(g, 0, 1, {7, 9});
    REQUIRE(full.answer == Answer::yes);
    check_walk(g, *full.witness, 0, 1, {7, 9});
    CHECK(has_path_with_weight(g, 0, 1, {7, 8}).answer == Answer::no);
    auto ok = has_path_with_weight(g, 0, 1, {1, 2});
    REQUIRE(ok.answer == Answer::yes);
    check_walk(g, *ok.witness, 0, 1, {1, 2});
}

TEST_CASE("random scalar graphs agree with walk enumeration and a clamped search") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 150; ++iter) {
        const std::size_t n = 1 + rng() % 4;
        auto g = testsupport::random_digraph(rng, n, 1, -3, 3, 0.35);
        WeightSetTable table(g);
        const auto clamp_base = static_cast<std::int64_t>(n * n + 1) * max_abs_weight(g);
        for (std::size_t u = 0; u < n; ++u) {
            auto configs = clamped_configs(g, u, 20 + clamp_base);
            for (std::size_t v = 0; v < n; ++v) {
                const auto& s = table(u, v);
                CHECK(weight_set(g, u, v) == s);
                for (const auto& w : testsupport::walk_weights(g, u, v, 12))
                    if (w[0] >= -36 && w[0] <= 36) CHECK(s.contains(w[0]));
                for (std::int64_t z = -20; z <= 20; ++z) {
                    bool expected = configs.count({v, IntVec{z}}) > 0;
                    CHECK_MESSAGE(s.contains(z) == expected, "iter " << iter << " u " << u << " v " << v << " z " << z);
                    auto q = has_path_with_weight(g, u, v, {z});
                    CHECK((q.answer == Answer::yes) == expected);
                    if (q.witness) check_walk(g, *q.witness, u, v, {z});
                }
            }
        }
    }
}

TEST_CASE("random two-dimensional graphs: witnesses are valid and complete on a box") {
    std::mt19937_64 rng(77);
    std::size_t decided = 0, queries = 0;
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t n = 1 + rng() % 3;
        auto g = testsupport::random_digraph(rng, n, 2, -2, 2, 0.4);
        for (std::size_t u = 0; u < n; ++u) {
            auto configs = clamped_configs(g, u, 14);
            for (std::size_t v = 0; v < n; ++v) {
                auto bounded = bounded_weight_set(g, u, v, 5);
                auto walks = testsupport::walk_weights(g, u, v, 5);
                CHECK(std::set<IntVec>(bounded.begin(), bounded.end()) == walks);
                for (std::int64_t x = -3; x <= 3; ++x)
                    for (std::int64_t y = -3; y <= 3; ++y) {
                        IntVec z{x, y};
                        // unknown is allowed under the small budget; a wrong no is not
                        auto q = has_path_with_weight(g, u, v, z, SolverBudget{4000});
                        if (configs.count({v, z})) CHECK(q.answer != Answer::no);
                        if (q.witness) check_walk(g, *q.witness, u, v, z);
                        decided += q.answer != Answer::unknown ? 1 : 0;
                        ++queries;
                    }
            }
        }
    }
    CHECK(decided * 2 > queries);
}

TEST_CASE("zero walks use zero arcs only") {
    WeightedDigraph g(1, 3);
    g.add_arc(0, 1, {0});
    g.add_arc(1, 2, {1});
    g.add_arc(1, 0, {-1});
    g.add_arc(0, 2, {-1});
    CHECK(find_zero_arc_walk(g, 0, 1));
    CHECK_FALSE(find_zero_arc_walk(g, 0, 2));
    auto w = find_walk_with_weight(g, 0, 2, 0);
    REQUIRE(w);
    check_walk(g, *w, 0, 2, {0});
}

}  // TEST_SUITE
