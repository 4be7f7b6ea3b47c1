#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "wdetect/corpus.hpp"
#include "wdetect/epl.hpp"
#include "wdetect/estimator.hpp"
#include "wdetect/self_composition.hpp"
#include "wdetect/verify.hpp"

using namespace wdetect;

namespace {

std::vector<std::int64_t> coins(std::size_t m) {
    std::vector<std::int64_t> w;
    for (std::size_t i = 0; i < m; ++i) w.push_back(static_cast<std::int64_t>(2 * i + 3));
    return w;
}

// Weight sets of the unobservable chain in a subset-sum instance.
void BM_WeightSetSubsetSumChain(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    auto g = unobservable_digraph(subset_sum_automaton(coins(m), 11));
    for (auto _ : state) benchmark::DoNotOptimize(weight_set(g, 0, m));
}
BENCHMARK(BM_WeightSetSubsetSumChain)->DenseRange(2, 8, 2);

void BM_SelfCompositionSubsetSum(benchmark::State& state) {
    auto a = prepare(subset_sum_automaton(coins(static_cast<std::size_t>(state.range(0))), 11)).automaton;
    for (auto _ : state) benchmark::DoNotOptimize(build_self_composition(a));
}
BENCHMARK(BM_SelfCompositionSubsetSum)->DenseRange(2, 8, 2);

void BM_ObserverRandom(benchmark::State& state) {
    RandomOptions opt;
    opt.max_states = static_cast<std::size_t>(state.range(0));
    auto a = prepare(random_automaton(7, opt)).automaton;
    for (auto _ : state) benchmark::DoNotOptimize(build_observer(a));
}
BENCHMARK(BM_ObserverRandom)->Arg(4)->Arg(6)->Arg(8);

void BM_CheckAllFixture(benchmark::State& state) {
    const auto names = fixture_names();
    auto a = load_fixture(names[static_cast<std::size_t>(state.range(0))]).automaton;
    state.SetLabel(names[static_cast<std::size_t>(state.range(0))]);
    for (auto _ : state) benchmark::DoNotOptimize(check_all(a));
}
BENCHMARK(BM_CheckAllFixture)->DenseRange(0, 2);

// Multiplicity search on a two-dimensional graph with cancelling loops.
void BM_VectorPathQuery(benchmark::State& state) {
    WeightedDigraph g(2, 2);
    g.add_arc(0, 0, {1, -1});
    g.add_arc(0, 1, {0, 0});
    g.add_arc(1, 1, {-2, 2});
    g.add_arc(1, 1, {3, 1});
    const std::int64_t z = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(has_path_with_weight(g, 0, 1, {z, -z}));
}
BENCHMARK(BM_VectorPathQuery)->Arg(3)->Arg(9)->Arg(27);

}  // namespace

BENCHMARK_MAIN();
