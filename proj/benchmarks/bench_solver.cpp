#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "ngems/solver.hpp"

using namespace ngems;

namespace {

// One noon-stage Bellman backup against a zero terminal row; the dominant
// inner loop of the solver.
void BM_BellmanBackup(benchmark::State& state) {
    const Scenario sc = testing::reference_scenario();
    const int n_states = static_cast<int>(state.range(0));
    const StateGrid grid = build_state_grid(sc.battery, n_states);
    const std::vector<double> value_next(grid.points.size(), 0.0);
    for (auto _ : state) {
        BackupRow row = bellman_backup(12, value_next, sc, grid, 101);
        benchmark::DoNotOptimize(row.value.data());
    }
    state.SetItemsProcessed(state.iterations() * n_states);
}

void BM_SolveBackwardDay(benchmark::State& state) {
    const Scenario sc = testing::reference_scenario();
    const int n_states = static_cast<int>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        ValueTable table = solve_backward(sc, n_states, 101, threads);
        benchmark::DoNotOptimize(table.value.data());
    }
}

void BM_ExpectedNextValue(benchmark::State& state) {
    const Scenario sc = testing::reference_scenario();
    const StateGrid grid = build_state_grid(sc.battery, 101);
    std::vector<double> value_next(grid.points.size());
    for (std::size_t j = 0; j < value_next.size(); ++j) {
        value_next[j] = 0.01 * static_cast<double>(j);
    }
    const StageBounds b = sc.stage_bounds(12);
    const Interval space = determinable_feasible_space(3.8, b.e_min, b.e_max, b.l_min,
                                                       b.l_max, sc.grid.dt_hours(), sc.battery);
    const double step = (space.hi - space.lo) / 32.0;
    double u = space.lo;
    for (auto _ : state) {
        u = u + step > space.hi ? space.lo : u + step;
        benchmark::DoNotOptimize(expected_next_value(12, 3.8, u, value_next, sc, grid));
    }
}

}  // namespace

BENCHMARK(BM_BellmanBackup)->Arg(51)->Arg(101)->Arg(201)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveBackwardDay)
    ->Args({101, 1})
    ->Args({101, 4})
    ->Args({201, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpectedNextValue);

BENCHMARK_MAIN();
