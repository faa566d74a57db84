#include <benchmark/benchmark.h>

#include "pipeleak/fd.hpp"

namespace {

using namespace pipeleak;

void BM_FdSolve(benchmark::State& state) {
    PipelineSpec spec;
    spec.length_L = 1.0e5;
    spec.sound_speed_c = 383.3;
    spec.lin_coeff_2a = 0.1;
    const FlowBoundary boundary{5.5e5, 30.0, 1.5};
    const LeakScenario leak{2.5e4, 0.802, 1.03e-4};

    FdConfig config;
    config.nx_per_line = static_cast<std::size_t>(state.range(0));
    config.dt = static_cast<double>(state.range(1));
    config.t_end = 600.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fd_solve(spec, boundary, leak, config, {600.0}));
}
BENCHMARK(BM_FdSolve)
    ->Args({201, 4})
    ->Args({401, 2})
    ->Args({801, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
