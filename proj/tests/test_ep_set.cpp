#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "wdetect/ep_set.hpp"

using wdetect::EPSet;

TEST_SUITE("ep_set") {

TEST_CASE("basic constructors and membership") {
    CHECK(EPSet().is_empty());
    CHECK(EPSet::all().contains(-1000));
    CHECK(EPSet::all().complement().is_empty());
    CHECK(EPSet::all().complement() == EPSet());
    auto s = EPSet::at_least(2) & EPSet::singleton(11);
    CHECK(s == EPSet::singleton(11));
    CHECK(s.witness() == 11);
    CHECK_FALSE(EPSet().witness().has_value());
}

TEST_CASE("ray minus a point keeps the exceptions below the new threshold") {
    auto s = EPSet::at_least(2) - EPSet::singleton(11);
    CHECK(s.up_start() == 12);
    CHECK(s.up().period == 1);
    CHECK(s.down().empty());
    CHECK(s.middle() == std::vector<std::int64_t>{2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(s.min_abs_witness() == 2);
    for (std::int64_t n = 0; n <= 30; ++n) CHECK(s.contains(n) == (n >= 2 && n != 11));
}

TEST_CASE("min_abs_witness prefers the nonnegative on ties") {
    CHECK(EPSet::finite({-3, 3, 7}).min_abs_witness() == 3);
    CHECK(EPSet::finite({-2, 3}).min_abs_witness() == -2);
    CHECK(EPSet::residue_class(1, 2).min_abs_witness() == 1);
    CHECK(EPSet::at_most(-5).min_abs_witness() == -5);
    CHECK(EPSet::up_ray(-7, 3).min_abs_witness() == -1);
    CHECK(EPSet::down_ray(8, 5).min_abs_witness() == -2);
}

TEST_CASE("fully periodic sets are canonical regardless of construction") {
    auto a = EPSet::up_ray(4, 3) | EPSet::down_ray(1, 3);
    CHECK(a == EPSet::residue_class(1, 3));
    CHECK(a.shift(2) == EPSet::residue_class(0, 3));
    auto b = EPSet::residue_class(0, 2) | EPSet::residue_class(1, 4);
    CHECK(b.up().period == 4);
    CHECK((EPSet::residue_class(0, 2) | EPSet::residue_class(1, 2)) == EPSet::all());
}

TEST_CASE("random sets agree with a naive evaluator") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 300; ++iter) {
        auto da = testsupport::random_description(rng);
        auto db = testsupport::random_description(rng);
        auto a = da.build(), b = db.build();
        auto u = a | b, i = a & b, d = a - b, c = a.complement();
        std::int64_t shift = static_cast<std::int64_t>(rng() % 21) - 10;
        auto sh = a.shift(shift), ng = a.negate();
        for (std::int64_t n = -200; n <= 200; ++n) {
            bool ia = da.contains(n), ib = db.contains(n);
            REQUIRE(a.contains(n) == ia);
            REQUIRE(u.contains(n) == (ia || ib));
            REQUIRE(i.contains(n) == (ia && ib));
            REQUIRE(d.contains(n) == (ia && !ib));
            REQUIRE(c.contains(n) == !ia);
            REQUIRE(sh.contains(n + shift) == ia);
            REQUIRE(ng.contains(-n) == ia);
        }
        // algebra laws, structurally
        CHECK((a | b).complement() == (a.complement() & b.complement()));
        CHECK((a & b).complement() == (a.complement() | b.complement()));
        CHECK(a.complement().complement() == a);
        CHECK((a | b) == (b | a));
        CHECK(a.shift(shift).shift(-shift) == a);
        CHECK(a.negate().negate() == a);
        if (auto w = a.min_abs_witness()) {
            CHECK(a.contains(*w));
            auto aw = *w < 0 ? -*w : *w;
            for (std::int64_t n = -aw + 1; n < aw; ++n) CHECK_FALSE(a.contains(n));
            if (*w < 0) CHECK_FALSE(a.contains(-*w));
        } else {
            CHECK(a.is_empty());
        }
    }
}

TEST_CASE("Minkowski sum agrees with pairwise sums") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 120; ++iter) {
        auto da = testsupport::random_description(rng);
        auto db = testsupport::random_description(rng);
        da.complemented = db.complemented = false;
        auto s = da.build().plus(db.build());
        std::vector<std::int64_t> as, bs;
        for (std::int64_t n = -500; n <= 500; ++n) {
            if (da.contains(n)) as.push_back(n);
            if (db.contains(n)) bs.push_back(n);
        }
        std::set<std::int64_t> sums;
        for (auto x : as)
            for (auto y : bs)
                if (x + y >= -60 && x + y <= 60) sums.insert(x + y);
        for (std::int64_t n = -60; n <= 60; ++n) REQUIRE(s.contains(n) == (sums.count(n) > 0));
    }
}

TEST_CASE("star is the generated submonoid") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 150; ++iter) {
        auto d = testsupport::random_description(rng);
        d.complemented = false;
        // keep the generators small so the naive closure window is exact
        for (auto& p : d.points) p /= 3;
        for (auto& r : d.up) r.first /= 3;
        for (auto& r : d.down) r.first /= 3;
        auto s = d.build().star();
        std::vector<std::int64_t> gens;
        for (std::int64_t n = -40; n <= 40; ++n)
            if (d.contains(n)) gens.push_back(n);
        for (std::int64_t n = -40; n <= 40; ++n) REQUIRE(s.contains(n) == testsupport::naive_span_contains(gens, n));
    }
}

TEST_CASE("span matches coin sums") {
    std::vector<std::vector<std::int64_t>> cases = {
        {}, {0}, {3}, {4, 6}, {3, 5}, {6, 10, 15}, {-4}, {-3, -5}, {4, -6}, {3, -5, 0}, {7, 7, 0, 12}, {1}};
    for (const auto& g : cases) {
        auto s = wdetect::span(g);
        for (std::int64_t n = -80; n <= 80; ++n) REQUIRE(s.contains(n) == testsupport::naive_span_contains(g, n));
    }
    CHECK(wdetect::span({4, -6}) == EPSet::residue_class(0, 2));
    CHECK(wdetect::span({}) == EPSet::singleton(0));
}

TEST_CASE("canonical form is unique per membership") {
    // Same set, different construction routes.
    auto a = EPSet::finite({1, 2, 3}) | EPSet::at_least(3);
    auto b = EPSet::at_least(1);
    CHECK(a == b);
    auto c = (EPSet::residue_class(0, 2) - EPSet::at_most(-1)) | EPSet::finite({1, 3, 5, 7});
    auto d = EPSet::at_least(0) - (EPSet::residue_class(1, 2) & EPSet::at_least(9));
    CHECK(c == d);
}

}  // TEST_SUITE
