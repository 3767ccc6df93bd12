// Serial versus OpenMP experiment runner on a reduced configuration.

#include <benchmark/benchmark.h>

#include "mbt/experiment.hpp"

namespace {

mbt::ExperimentConfig small_config() {
    mbt::ExperimentConfig cfg;
    cfg.variants = {"sample", "buggy-bowl"};
    cfg.repetitions = 4;
    cfg.gen_repetitions = 3;
    return cfg;
}

void BM_ExperimentSerial(benchmark::State& state) {
    const auto cfg = small_config();
    for (auto _ : state) benchmark::DoNotOptimize(mbt::run_experiment_serial(cfg));
}

void BM_ExperimentParallel(benchmark::State& state) {
    const auto cfg = small_config();
    for (auto _ : state) benchmark::DoNotOptimize(mbt::run_experiment_parallel(cfg));
}

}  // namespace

BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
