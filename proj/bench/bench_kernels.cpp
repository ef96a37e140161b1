// Serial reference vs OpenMP path for the Monte Carlo kernels.
// Run: ./bench_kernels --benchmark_counters_tabular=true

#include <string>

#include <benchmark/benchmark.h>

#include "ecoroute/config_io.hpp"
#include "ecoroute/kernels.hpp"

using namespace ecoroute;

namespace {

const Router& router() {
    static const Router r = [] {
        SystemConfig cfg = load_config(std::string(ECOROUTE_CONFIG_DIR) + "/reference.json");
        cfg.horizon = 2000;
        return Router(cfg);
    }();
    return r;
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_Trials(benchmark::State& state) {
    TrialOptions o;
    o.checkpoints = geometric_checkpoints(100, 2000, 20);
    for (auto _ : state) benchmark::DoNotOptimize(run_trials(router(), 0.1, 1, 64, o, mode(state)));
    state.SetItemsProcessed(state.iterations() * 64);
}

void BM_RandomWalk(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(random_walk_deficits({0.0, 1.0}, 2000, 256, 1, mode(state)));
    state.SetItemsProcessed(state.iterations() * 256);
}

void BM_LumpedTotals(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lumped_totals(router(), 100, 1000, 1, mode(state)));
    state.SetItemsProcessed(state.iterations() * 1000);
}

}  // namespace

BENCHMARK(BM_Trials)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomWalk)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LumpedTotals)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
