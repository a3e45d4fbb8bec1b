// Serial reference loop vs. the OpenMP batch path over independent runs.

#include "evoc/experiments.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

namespace {

std::pair<std::vector<evoc::SimConfig>, std::vector<std::uint64_t>> batch(std::size_t n) {
    evoc::SimConfig c;
    c.creator_p_invent = 0.5;
    std::vector<std::uint64_t> seeds(n);
    std::iota(seeds.begin(), seeds.end(), 1);
    return {std::vector<evoc::SimConfig>(n, c), seeds};
}

void BM_SingleRun(benchmark::State& state) {
    evoc::SimConfig c;
    for (auto _ : state) benchmark::DoNotOptimize(evoc::run_sim(c, 1));
}

void BM_BatchSerial(benchmark::State& state) {
    auto [configs, seeds] = batch(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evoc::run_batch(configs, seeds, evoc::Execution::serial()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchParallel(benchmark::State& state) {
    auto [configs, seeds] = batch(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evoc::run_batch(configs, seeds, evoc::Execution{}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_SingleRun)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
