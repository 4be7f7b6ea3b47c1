#include "wdetect/corpus.hpp"

#include <random>
#include <stdexcept>

namespace wdetect {

std::string subset_sum_sink(std::size_t m, int which) {
    return "q" + std::to_string(m + 1) + "_" + std::to_string(which);
}

WeightedAutomaton subset_sum_automaton(const std::vector<std::int64_t>& weights, std::int64_t target) {
    if (weights.empty()) throw std::invalid_argument("subset-sum instance needs at least one weight");
    for (auto w : weights)
        if (w < 1) throw std::invalid_argument("subset-sum weights must be positive");
    if (target < 1) throw std::invalid_argument("subset-sum target must be positive");
    const auto m = weights.size();
    auto q = [](std::size_t i) { return "q" + std::to_string(i); };
    AutomatonBuilder b(1);
    for (std::size_t i = 0; i <= m; ++i) b.state(q(i));
    const auto s1 = subset_sum_sink(m, 1), s2 = subset_sum_sink(m, 2);
    b.state(s1).state(s2);
    b.event("u1", std::nullopt).event("u2", std::nullopt).event("e", "e");
    b.initial(q(0), WeightVector(1));
    for (std::size_t i = 0; i < m; ++i) {
        b.transition(q(i), "u1", q(i + 1), IntVec{weights[i]});
        b.transition(q(i), "u2", q(i + 1), IntVec{0});
    }
    b.transition(q(m), "e", s1, IntVec{1});
    b.transition(q(0), "e", s2, IntVec{checked_add(target, 1)});
    b.transition(s1, "e", s1, IntVec{1});
    b.transition(s2, "e", s2, IntVec{1});
    return b.build();
}

bool subset_sum_solvable(const std::vector<std::int64_t>& weights, std::int64_t target) {
    if (target < 0) return false;
    std::vector<bool> can(static_cast<std::size_t>(target) + 1, false);
    can[0] = true;
    for (auto w : weights)
        for (std::int64_t s = target; s >= w; --s)
            if (can[static_cast<std::size_t>(s - w)]) can[static_cast<std::size_t>(s)] = true;
    // the empty subset does not count: target >= 1 always
    return target > 0 && can[static_cast<std::size_t>(target)];
}

namespace {

WeightedAutomaton fixture_a1() {
    AutomatonBuilder b(1);
    for (auto s : {"q0", "q1", "q2", "q3", "q4"}) b.state(s);
    b.event("a", "ρ").event("b", "ρ").event("u", std::nullopt);
    b.initial("q0", WeightVector(1));
    b.transition("q0", "a", "q1", IntVec{1});
    b.transition("q0", "a", "q2", IntVec{1});
    b.transition("q1", "u", "q1", IntVec{1});
    b.transition("q2", "u", "q2", IntVec{1});
    b.transition("q1", "b", "q3", IntVec{2});
    b.transition("q2", "b", "q3", IntVec{1});
    b.transition("q3", "u", "q4", IntVec{1});
    b.transition("q4", "a", "q4", IntVec{1});
    return b.build();
}

WeightedAutomaton fixture_a0() {
    AutomatonBuilder b(1);
    for (auto s : {"q0", "q1", "q2", "q3", "q4"}) b.state(s);
    b.event("u", std::nullopt).event("a", "a");
    b.initial("q0", WeightVector(1));
    b.transition("q0", "u", "q1", IntVec{10});
    b.transition("q0", "u", "q2", IntVec{1});
    b.transition("q2", "u", "q2", IntVec{1});
    b.transition("q1", "a", "q3", IntVec{1});
    b.transition("q2", "a", "q4", IntVec{1});
    b.transition("q3", "a", "q3", IntVec{1});
    b.transition("q4", "a", "q4", IntVec{1});
    return b.build();
}

// Energy levels 0..10 times positions P1..P4; positions are basis vectors of Z^4.
WeightedAutomaton fixture_robot() {
    AutomatonBuilder b(4);
    auto name = [](int level, int pos) { return "(" + std::to_string(level) + ",P" + std::to_string(pos) + ")"; };
    auto move = [](int from, int to) {
        IntVec v(4, 0);
        v[static_cast<std::size_t>(to - 1)] += 1;
        v[static_cast<std::size_t>(from - 1)] -= 1;
        return v;
    };
    for (int i = 0; i <= 10; ++i)
        for (int p = 1; p <= 4; ++p) b.state(name(i, p));
    b.event("a", "a").event("u", std::nullopt).event("b", "b");
    b.initial(name(5, 1), WeightVector::from_ints({1, 0, 0, 0}));
    for (int i = 1; i <= 10; ++i) {
        for (int k : {1, 3}) b.transition(name(i, k), "a", name(i - 1, k + 1), move(k, k + 1));
        b.transition(name(i, 2), "u", name(i - 1, 3), move(2, 3));
        b.transition(name(i, 2), "u", name(i, 3), move(2, 3));
    }
    for (int l = 2; l <= 4; ++l) {
        for (int j = 0; j <= 9; ++j) b.transition(name(j, l), "b", name(j + 1, l - 1), move(l, l - 1));
        b.transition(name(10, l), "b", name(10, l - 1), move(l, l - 1));
    }
    return b.build();
}

}  // namespace

std::vector<std::string> fixture_names() { return {"A0", "A1", "robot"}; }

Fixture load_fixture(const std::string& name) {
    using enum Property;
    if (name == "A1")
        return {name, fixture_a1(),
                {{sd, Status::holds}, {spd, Status::fails}, {wd, Status::holds}, {wpd, Status::holds}},
                "ambiguous automaton with two rho-paths into q3"};
    if (name == "A0")
        return {name, fixture_a0(),
                {{sd, Status::fails}, {spd, Status::fails}, {wd, Status::holds}, {wpd, Status::holds}},
                "unambiguous automaton with an unobservable loop on q2"};
    if (name == "robot")
        return {name, fixture_robot(), {{sd, Status::fails}, {wd, Status::holds}},
                "robot walking between four positions with energy levels 0..10"};
    throw std::invalid_argument("unknown fixture '" + name + "' (known: A0, A1, robot)");
}

namespace {

// Own mapping from raw engine output so results do not depend on the standard
// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

private:
    std::mt19937_64 eng_;
};

}  // namespace

WeightedAutomaton random_automaton(std::uint64_t seed, const RandomOptions& opt) {
    if (opt.max_states == 0 || opt.max_events == 0 || opt.k == 0 || opt.labels == 0 || opt.min_weight > opt.max_weight)
        throw std::invalid_argument("invalid random automaton bounds");
    Rng rng(seed);
    const auto n = 1 + rng.below(opt.max_states);
    const auto m = 1 + rng.below(opt.max_events);
    AutomatonBuilder b(opt.k);
    for (std::size_t i = 0; i < n; ++i) b.state("q" + std::to_string(i));
    for (std::size_t e = 0; e < m; ++e) {
        std::optional<std::string> label;
        if (!rng.chance(opt.unobservable_fraction)) label = std::string(1, static_cast<char>('a' + rng.below(opt.labels)));
        b.event("e" + std::to_string(e), label);
    }
    b.initial("q0", WeightVector(opt.k));
    for (std::size_t i = 1; i < n; ++i)
        if (rng.chance(0.15)) b.initial("q" + std::to_string(i), WeightVector(opt.k));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t e = 0; e < m; ++e)
            for (std::size_t t = 0; t < n; ++t) {
                if (!rng.chance(opt.density)) continue;
                IntVec w(opt.k);
                for (auto& x : w) x = rng.between(opt.min_weight, opt.max_weight);
                b.transition("q" + std::to_string(s), "e" + std::to_string(e), "q" + std::to_string(t), w);
            }
    return b.build();
}

}  // namespace wdetect
