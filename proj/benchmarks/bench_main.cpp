#include <benchmark/benchmark.h>

#include "waveobs/cascade_observer.hpp"

using namespace waveobs;

namespace {

void BM_LeapfrogStep(benchmark::State& state) {
    const Grid1D g = build_grid(static_cast<int>(state.range(0)), 0.5, 1.0);
    auto s = init_leapfrog(eval_source_profile(SourceProfile::poly_paper(), g), ScalarField::zeros(g), ScalarField{}, g);
    for (auto _ : state) {
        advance(s, 0.0, {}, g);
        benchmark::DoNotOptimize(s.curr.values.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LeapfrogStep)->Arg(20)->Arg(80)->Arg(320);

void BM_ForwardSimulation(benchmark::State& state) {
    const Grid1D g = build_grid(20, 0.005, 3.0);
    const auto q = eval_source_profile(SourceProfile::poly_paper(), g);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_forward(q, 1.0, g));
}
BENCHMARK(BM_ForwardSimulation)->Unit(benchmark::kMillisecond);

void BM_ObserverHalfPass(benchmark::State& state) {
    const Grid1D g = build_grid(20, 0.005, 3.0);
    const auto m = simulate_forward(eval_source_profile(SourceProfile::poly_paper(), g), 1.0, g);
    const ExtendedMeasurement em{m};
    const Observer obs(g, Gains{}, 1.0);
    for (auto _ : state) {
        auto s = obs.initial_state(em);
        obs.half_pass(s, em);
        benchmark::DoNotOptimize(s.wave.curr.values.data());
    }
}
BENCHMARK(BM_ObserverHalfPass)->Unit(benchmark::kMillisecond);

void BM_BackAndForthMonitored(benchmark::State& state) {
    const Grid1D g = build_grid(20, 0.005, 3.0);
    const auto q = eval_source_profile(SourceProfile::poly_paper(), g);
    const auto m = simulate_forward(q, 1.0, g);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_back_and_forth(m, Gains{}, 1.0, g, static_cast<int>(state.range(0)), q));
}
BENCHMARK(BM_BackAndForthMonitored)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
