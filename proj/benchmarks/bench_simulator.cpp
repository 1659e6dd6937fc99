#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "ngems/policy.hpp"
#include "ngems/simulator.hpp"
#include "ngems/solver.hpp"

using namespace ngems;

namespace {

void BM_RolloutPolicy1(benchmark::State& state) {
    const Scenario sc = testing::reference_scenario();
    const ExhaustiveStoragePolicy p1;
    std::uint64_t r = 0;
    for (auto _ : state) {
        const Trajectory traj = rollout(p1, sc, sample_stream(sc, 7, r++));
        benchmark::DoNotOptimize(traj.total_j1());
    }
}

void BM_RolloutOptimal(benchmark::State& state) {
    const Scenario sc = testing::reference_scenario();
    const NearOptimalPolicy popt(solve_backward(sc, 101, 101, 4));
    std::uint64_t r = 0;
    for (auto _ : state) {
        const Trajectory traj = rollout(popt, sc, sample_stream(sc, 7, r++));
        benchmark::DoNotOptimize(traj.total_j1());
    }
}

void BM_MonteCarloPolicy1(benchmark::State& state) {
    const Scenario sc = testing::reference_scenario();
    const ExhaustiveStoragePolicy p1;
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const PolicyStats stats = monte_carlo(p1, sc, 256, 7, threads);
        benchmark::DoNotOptimize(stats.mean_j1);
    }
    state.SetItemsProcessed(state.iterations() * 256);
}

}  // namespace

BENCHMARK(BM_RolloutPolicy1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RolloutOptimal)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MonteCarloPolicy1)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
