#include <benchmark/benchmark.h>

#include "pipeleak/localization.hpp"
#include "pipeleak/scenario_io.hpp"

namespace {

using namespace pipeleak;

ScenarioBundle baseline_bundle() {
    ScenarioBundle bundle;
    bundle.spec.length_L = 1.0e5;
    bundle.spec.sound_speed_c = 383.3;
    bundle.spec.lin_coeff_2a = 0.1;
    bundle.boundary = FlowBoundary{5.5e5, 30.0, 1.5};
    bundle.scenario = LeakScenario{2.5e4, 0.802, 1.03e-4};
    return bundle;
}

void BM_LocalizeFixedWindow(benchmark::State& state) {
    const ScenarioBundle bundle = baseline_bundle();
    const PressureSeries observed = synth_series(
        bundle, Sampling{}, ForwardSource::PureExponential, NoiseSpec{});
    SearchConfig search;
    search.window_policy = WindowPolicy::FixedWindow;
    search.l_grid_step = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(localize(bundle.spec, bundle.boundary,
                                          bundle.scenario, bundle.series,
                                          observed, search));
}
BENCHMARK(BM_LocalizeFixedWindow)
    ->Arg(1000)
    ->Arg(500)
    ->Unit(benchmark::kMillisecond);

void BM_LocalizeDelayScaled(benchmark::State& state) {
    const ScenarioBundle bundle = baseline_bundle();
    const PressureSeries observed = synth_series(
        bundle, Sampling{}, ForwardSource::AnalyticForward, NoiseSpec{});
    const SearchConfig search;
    for (auto _ : state)
        benchmark::DoNotOptimize(localize(bundle.spec, bundle.boundary,
                                          bundle.scenario, bundle.series,
                                          observed, search));
}
BENCHMARK(BM_LocalizeDelayScaled)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
