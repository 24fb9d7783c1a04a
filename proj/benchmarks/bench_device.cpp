#include <benchmark/benchmark.h>

#include "optomem/maze.hpp"
#include "optomem/neuro.hpp"

using namespace optomem;

static void BM_StepSubThreshold(benchmark::State& state) {
    const auto ag = ag_ag_nonvolatile();
    DeviceState s;
    RandomSource rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(ag, s, {0.3, 0.0, 1e-3}, rng));
    }
}
BENCHMARK(BM_StepSubThreshold);

static void BM_StepFullLatch(benchmark::State& state) {
    const auto ag = ag_ag_nonvolatile();
    RandomSource rng(2);
    for (auto _ : state) {
        DeviceState s;
        benchmark::DoNotOptimize(step(ag, s, {0.72, 0.0, 1.0}, rng));
    }
}
BENCHMARK(BM_StepFullLatch);

static void BM_SampleLatency(benchmark::State& state) {
    const auto ag = ag_ag_nonvolatile();
    RandomSource rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_latency(ag, 0.1, rng));
    }
}
BENCHMARK(BM_SampleLatency);

static void BM_IvSweep(benchmark::State& state) {
    const auto ag = ag_ag_nonvolatile();
    RandomSource rng(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_iv(ag, 0.0, 0.7, 0.005, 1e-3, rng));
    }
}
BENCHMARK(BM_IvSweep);

static void BM_SynapseRewardCycle(benchmark::State& state) {
    ThreeFactorSynapse syn;
    RandomSource rng(5);
    for (auto _ : state) {
        syn.raise_eligibility();
        benchmark::DoNotOptimize(syn.apply_reward(rng));
        syn.reset();
    }
}
BENCHMARK(BM_SynapseRewardCycle);

static void BM_DendritePulse(benchmark::State& state) {
    ShuntingDendrite den;
    RandomSource rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(den.respond(true, false, rng));
    }
}
BENCHMARK(BM_DendritePulse);

static void BM_MazeTrain(benchmark::State& state) {
    const MazeSpec maze;
    const int n_trials = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SynapseArray store(maze);
        MazeRng rng(7);
        benchmark::DoNotOptimize(train(maze, store, n_trials, rng));
    }
}
BENCHMARK(BM_MazeTrain)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
