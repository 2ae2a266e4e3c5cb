#include <benchmark/benchmark.h>

#include "sfront/semiwave.hpp"

namespace {

void BM_phase_trajectory(benchmark::State& state) {
    const auto f = sfront::HomogeneousF::logistic();
    for (auto _ : state) {
        auto curve = sfront::phase_trajectory(f, 0.5);
        benchmark::DoNotOptimize(curve.p_end());
    }
}
BENCHMARK(BM_phase_trajectory);

void BM_find_cstar_logistic(benchmark::State& state) {
    const auto f = sfront::HomogeneousF::logistic();
    for (auto _ : state) {
        auto prof = sfront::find_cstar(f, 1.0, 1e-8);
        benchmark::DoNotOptimize(prof.c_star);
    }
}
BENCHMARK(BM_find_cstar_logistic);

}  // namespace

BENCHMARK_MAIN();
