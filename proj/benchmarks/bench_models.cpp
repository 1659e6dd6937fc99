#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "ngems/distribution.hpp"
#include "ngems/models.hpp"
#include "ngems/rng.hpp"

using namespace ngems;

namespace {

void BM_Discretize(benchmark::State& state) {
    const int n_samples = static_cast<int>(state.range(0));
    Rng rng(1);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) samples.push_back(rng.uniform(0.0, 900.0));
    for (auto _ : state) {
        EmpiricalDistribution d = discretize(samples, 5);
        benchmark::DoNotOptimize(d.size());
    }
    state.SetItemsProcessed(state.iterations() * n_samples);
}

// Thirty days of hourly records through the full fitting pipeline.
void BM_BuildPvModel(benchmark::State& state) {
    Rng rng(2);
    std::vector<WeatherRecord> records;
    for (int d = 0; d < 30; ++d) {
        for (int h = 0; h < 24; ++h) {
            WeatherRecord r;
            r.timestamp_s = (static_cast<std::int64_t>(d) * 24 + h) * 3600;
            const double fc = (h >= 6 && h <= 18)
                                  ? 800.0 * std::sin(3.14159265 * (h - 6) / 12.0)
                                  : 0.0;
            r.forecast_wm2 = fc;
            r.measured_wm2 = std::max(0.0, fc + rng.uniform(-120.0, 120.0));
            r.horizon_h = 24.0;
            records.push_back(r);
        }
    }
    const ReferenceForecast ref = mean_forecast_by_hour(records);
    const PvPlant plant{2.5, 1.0};
    for (auto _ : state) {
        CyclostationaryModel model = build_pv_model(records, plant, 5, ref.by_hour);
        benchmark::DoNotOptimize(&model);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int>(records.size()));
}

}  // namespace

BENCHMARK(BM_Discretize)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildPvModel)->Unit(benchmark::kMillisecond);
