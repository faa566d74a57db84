#include <benchmark/benchmark.h>

#include <vector>

#include "pipeleak/analytic.hpp"

namespace {

using namespace pipeleak;

PipelineSpec baseline_spec() {
    PipelineSpec spec;
    spec.length_L = 1.0e5;
    spec.sound_speed_c = 383.3;
    spec.lin_coeff_2a = 0.1;
    return spec;
}

void BM_PressureAt(benchmark::State& state) {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary{5.5e5, 30.0, 1.5};
    const LeakScenario leak{2.5e4, 0.802, 1.03e-4};
    SeriesConfig series;
    series.n_terms = static_cast<int>(state.range(0));
    double t = 0.0;
    for (auto _ : state) {
        t += 1.0;
        benchmark::DoNotOptimize(pressure_at(spec, boundary, leak, series,
                                             SegmentId::Intact, 4.2e4, t));
    }
}
BENCHMARK(BM_PressureAt)->Arg(20)->Arg(100)->Arg(500);

void BM_PressureField(benchmark::State& state) {
    const PipelineSpec spec = baseline_spec();
    const FlowBoundary boundary{5.5e5, 30.0, 1.5};
    const LeakScenario leak{2.5e4, 0.802, 1.03e-4};
    const SeriesConfig series;
    std::vector<double> xs, ts;
    const auto nx = static_cast<std::size_t>(state.range(0));
    for (std::size_t i = 0; i < nx; ++i)
        xs.push_back(spec.length_L * static_cast<double>(i) /
                     static_cast<double>(nx - 1));
    for (double t = 0.0; t <= 600.0; t += 100.0) ts.push_back(t);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            pressure_field(spec, boundary, leak, series, xs, ts));
}
BENCHMARK(BM_PressureField)->Arg(21)->Arg(101)->Arg(1001);

}  // namespace

BENCHMARK_MAIN();
