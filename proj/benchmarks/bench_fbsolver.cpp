#include <benchmark/benchmark.h>

#include "sfront/fbsolver.hpp"

namespace {

void BM_one_front_steps(benchmark::State& state) {
    const auto spec =
        sfront::NonlinearitySpec::homogeneous(sfront::HomogeneousF::logistic());
    const auto prof = sfront::find_cstar(sfront::HomogeneousF::logistic(), 1.0, 1e-8);
    const auto init =
        sfront::make_initial_semiwave(prof, 40.0, static_cast<int>(state.range(0)));
    sfront::SolveParams params;
    params.dt = 1e-3;
    for (auto _ : state) {
        sfront::OneFrontStepper stepper(spec, init, params);
        for (int k = 0; k < 100; ++k) stepper.advance();
        benchmark::DoNotOptimize(stepper.state().h);
    }
    state.SetItemsProcessed(state.iterations() * 100 * state.range(0));
}
BENCHMARK(BM_one_front_steps)->Arg(1000)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
