#include <benchmark/benchmark.h>

#include "dpamimo/allocator.hpp"
#include "dpamimo/fabric.hpp"
#include "dpamimo/random_instances.hpp"
#include "dpamimo/scenario.hpp"

using namespace dpamimo;

namespace {

std::vector<AllocationInputs> corpus(int max_bf) {
    std::vector<AllocationInputs> out;
    for (std::uint64_t s = 1; s <= 64; ++s) out.push_back(random_allocation_instance(s, max_bf));
    return out;
}

void BM_Greedy(benchmark::State& state) {
    const auto instances = corpus(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_assign(instances[i++ % instances.size()]));
    }
}
BENCHMARK(BM_Greedy)->Arg(4)->Arg(6);

void BM_BruteForce(benchmark::State& state) {
    const auto instances = corpus(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_assign(instances[i++ % instances.size()]));
    }
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(6);

void BM_EnumerateStates(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto config = FabricConfig::make(n, 2, 1);
    std::set<int> active;
    for (int m = 0; m < n; ++m) active.insert(m);
    for (auto _ : state) {
        std::size_t count = 0;
        for_each_valid_state(config, active, [&](const FabricState&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumerateStates)->DenseRange(2, 6, 2);

void BM_RunFig8(benchmark::State& state) {
    const auto config = default_fig8_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(run(config));
}
BENCHMARK(BM_RunFig8);

void BM_Sweep(benchmark::State& state) {
    std::vector<ScenarioConfig> configs;
    for (std::uint64_t s = 1; s <= 64; ++s) configs.push_back(random_scenario(s));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(configs, {}, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
