#include <cmath>

#include <benchmark/benchmark.h>

#include "sfront/apsteady.hpp"

namespace {

void BM_compute_uc(benchmark::State& state) {
    const sfront::QuasiPeriodicSignal c{
        1.0, {{0.3, 1.0, 0.0}, {0.3, std::sqrt(2.0), 0.0}}};
    for (auto _ : state) {
        auto uc = sfront::compute_uc(c, 0.0, 50.0);
        benchmark::DoNotOptimize(uc.u.back());
    }
}
BENCHMARK(BM_compute_uc);

void BM_compute_va(benchmark::State& state) {
    const sfront::QuasiPeriodicSignal a{
        1.0, {{0.3, 1.0, 0.0}, {0.3, std::sqrt(2.0), 0.0}}};
    for (auto _ : state) {
        auto va = sfront::compute_va(a, -10.0, 10.0);
        benchmark::DoNotOptimize(va.v.back());
    }
}
BENCHMARK(BM_compute_va);

}  // namespace

BENCHMARK_MAIN();
