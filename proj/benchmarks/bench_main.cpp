#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "fragile/minimum.hpp"
#include "fragile/network.hpp"
#include "fragile/selection.hpp"
#include "fragile/sorting.hpp"

namespace {

using namespace fragile;

std::vector<std::int64_t> shuffled(std::size_t n, std::uint64_t seed) {
    std::vector<std::int64_t> v(n);
    std::iota(v.begin(), v.end(), 1);
    Rng rng(Rng::mix(seed));
    rng.shuffle(v);
    return v;
}

void bm_network_execute(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    ComparatorNetwork net = sorting_network(n);
    auto values = shuffled(n, 1);
    for (auto _ : state) {
        ValueOracle oracle(values);
        Ledger led(n);
        Comparer cmp(oracle, led);
        auto wires = real_items(n);
        execute(net, cmp, wires);
        benchmark::DoNotOptimize(wires);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_network_execute)->Range(64, 4096);

template <MergeKind Kind>
void bm_mergesort(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto values = shuffled(n, 2);
    for (auto _ : state) {
        ValueOracle oracle(values);
        Ledger led(n);
        Comparer cmp(oracle, led);
        auto out = mergesort(real_items(n), Kind, cmp);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_mergesort<MergeKind::Linear>)->Range(1 << 10, 1 << 16);
BENCHMARK(bm_mergesort<MergeKind::Exponential>)->Range(1 << 10, 1 << 16);

void bm_heapify(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto values = shuffled(n, 3);
    for (auto _ : state) {
        ValueOracle oracle(values);
        Ledger led(n);
        Comparer cmp(oracle, led);
        auto heap = floyd_heapify(real_items(n), cmp);
        benchmark::DoNotOptimize(heap);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_heapify)->Range(1 << 10, 1 << 18);

void bm_sample_minimum(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto values = shuffled(n, 4);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        ValueOracle oracle(values);
        Ledger led(n);
        Comparer cmp(oracle, led);
        Rng rng = Rng::for_trial(99, n, trial++);
        auto res = sample_minimum(real_items(n), cmp, rng);
        benchmark::DoNotOptimize(res);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_sample_minimum)->Range(1 << 10, 1 << 18);

void bm_r_median(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto values = shuffled(n, 5);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        ValueOracle oracle(values);
        Ledger led(n);
        Comparer cmp(oracle, led);
        Rng rng = Rng::for_trial(98, n, trial++);
        Item m = r_median(real_items(n), RMedianParams{}, cmp, rng);
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_r_median)->Range(1 << 12, 1 << 16);

} // namespace

BENCHMARK_MAIN();
