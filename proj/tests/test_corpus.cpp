#include <doctest.h>

#include <random>
#include <stdexcept>

#include "support.hpp"
#include "wdetect/corpus.hpp"
#include "wdetect/io.hpp"
#include "wdetect/verify.hpp"

using namespace wdetect;

TEST_SUITE("corpus") {

TEST_CASE("subset-sum automaton layout") {
    auto a = subset_sum_automaton({2, 3}, 5);
    CHECK(a.num_states() == 5);
    CHECK(a.num_transitions() == 2 * 2 + 4);
    CHECK(a.find_state("q3_1"));
    CHECK(a.find_state("q3_2"));
    CHECK(subset_sum_sink(2, 1) == "q3_1");
    CHECK_FALSE(a.event(*a.find_event("u1")).observable());
    CHECK_FALSE(a.event(*a.find_event("u2")).observable());
    CHECK(a.event(*a.find_event("e")).label == "e");
    auto q0 = *a.find_state("q0");
    bool entry = false;
    for (auto t : a.outgoing(q0))
        if (a.transition(t).to == *a.find_state("q3_2")) entry = a.int_weight(t) == IntVec{6};
    CHECK(entry);
    auto r = structure_report(a);
    CHECK(r.deadlock_free);
    CHECK(r.divergence_free);
}

TEST_CASE("subset-sum arguments are checked") {
    CHECK_THROWS_AS(subset_sum_automaton({}, 3), std::invalid_argument);
    CHECK_THROWS_AS(subset_sum_automaton({0, 2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(subset_sum_automaton({2}, 0), std::invalid_argument);
}

TEST_CASE("brute-force subset sum") {
    CHECK(subset_sum_solvable({2, 3}, 5));
    CHECK_FALSE(subset_sum_solvable({2, 4}, 5));
    CHECK(subset_sum_solvable({7}, 7));
    CHECK(subset_sum_solvable({1, 1, 1}, 3));
    CHECK_FALSE(subset_sum_solvable({1, 1, 1}, 4));
}

TEST_CASE("strong detectability tracks subset sums on small instances") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        std::vector<std::int64_t> w(1 + rng() % 4);
        for (auto& x : w) x = 1 + static_cast<std::int64_t>(rng() % 6);
        std::int64_t target = 1 + static_cast<std::int64_t>(rng() % 15);
        auto v = check_property(subset_sum_automaton(w, target), Property::sd);
        CHECK(v.status == (subset_sum_solvable(w, target) ? Status::fails : Status::holds));
    }
}

TEST_CASE("fixture files match the built-in fixtures") {
    for (const auto& name : fixture_names()) {
        auto f = load_fixture(name);
        CHECK(testsupport::load_fixture_file(name) == f.automaton);
        CHECK(testsupport::read_file(std::string(WDETECT_FIXTURE_DIR) + "/" + name + ".json") ==
              io::serialize(f.automaton));
        CHECK_FALSE(f.source.empty());
    }
    CHECK_THROWS_AS(load_fixture("A7"), std::invalid_argument);
}

TEST_CASE("robot fixture shape") {
    auto r = load_fixture("robot").automaton;
    CHECK(r.dimension() == 4);
    CHECK(r.num_states() == 44);
    REQUIRE(r.initial().size() == 1);
    CHECK(r.state_name(r.initial()[0].first) == "(5,P1)");
    CHECK(r.initial()[0].second == WeightVector::from_ints({1, 0, 0, 0}));
    // every transition moves one unit between adjacent positions
    for (const auto& t : r.transitions()) {
        std::int64_t sum = 0, nonzero = 0;
        for (const auto& x : t.weight.entries()) {
            sum += x.num();
            nonzero += x.is_zero() ? 0 : 1;
        }
        CHECK(sum == 0);
        CHECK(nonzero == 2);
    }
}

TEST_CASE("random automata are reproducible and respect bounds") {
    RandomOptions opt;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto a = random_automaton(seed, opt);
        CHECK(a == random_automaton(seed, opt));
        CHECK(a.num_states() <= opt.max_states);
        CHECK(a.num_events() <= opt.max_events);
        CHECK(a.is_initial(0));
        for (TransitionId t = 0; t < a.num_transitions(); ++t) {
            CHECK(a.int_weight(t)[0] >= opt.min_weight);
            CHECK(a.int_weight(t)[0] <= opt.max_weight);
        }
    }
    CHECK_FALSE(random_automaton(1) == random_automaton(2));
    opt.k = 3;
    CHECK(random_automaton(4, opt).dimension() == 3);
    opt.max_states = 0;
    CHECK_THROWS_AS(random_automaton(0, opt), std::invalid_argument);
}

}  // TEST_SUITE
