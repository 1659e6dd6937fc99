#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ngems/distribution.hpp"
#include "ngems/time_grid.hpp"

namespace ngems {

// 24-hour-periodic stochastic process: one marginal distribution per hour of
// day. Stage k of a grid sees the distribution of hour_of_day(grid, k), so
// the process repeats exactly every 24 h of grid time.
class CyclostationaryModel {
public:
    explicit CyclostationaryModel(std::array<EmpiricalDistribution, 24> by_hour)
        : by_hour_(std::move(by_hour)) {}

    const EmpiricalDistribution& at_hour(int hour) const;
    const EmpiricalDistribution& at_stage(const TimeGrid& grid, int k) const {
        return at_hour(hour_of_day(grid, k));
    }

    double sample(const TimeGrid& grid, int k, Rng& rng) const {
        return at_stage(grid, k).sample(rng);
    }
    double expectation(const TimeGrid& grid, int k) const {
        return at_stage(grid, k).expectation();
    }
    // (min, max) of the stage-k support; feeds the constraint envelopes.
    std::pair<double, double> bounds(const TimeGrid& grid, int k) const {
        const auto& d = at_stage(grid, k);
        return {d.min(), d.max()};
    }

    bool operator==(const CyclostationaryModel&) const = default;

private:
    std::array<EmpiricalDistribution, 24> by_hour_;
};

// One raw weather row. measured/forecast are both in W/m²; either may be
// absent (empty CSV field), never both.
struct WeatherRecord {
    std::int64_t timestamp_s = 0;
    std::optional<double> measured_wm2;
    std::optional<double> forecast_wm2;
    double horizon_h = 0.0;
};

// Linear irradiance→power map: capacity_kw at 1000 W/m², scaled by derate.
struct PvPlant {
    double capacity_kw = 0.0;
    double derate = 1.0;

    void validate() const;  // capacity > 0, derate in (0, 1]
};

struct TimedValue {
    std::int64_t timestamp_s = 0;
    double value = 0.0;
};

// --- forecast-error pipeline -----------------------------------------------

struct ForecastErrorSeries {
    std::vector<TimedValue> errors;  // measured - forecast, record order
    std::size_t skipped = 0;         // records missing measured or forecast
};

// Throws DataError if no record carries both fields.
ForecastErrorSeries compute_forecast_errors(const std::vector<WeatherRecord>& records);

struct FilledSeries {
    std::vector<TimedValue> dense;   // one value per grid timestamp
    std::size_t backfilled = 0;      // grid hours before the first observation
};

// Hold-last interpolation of a sparse series onto explicit grid timestamps;
// grid hours before the first observation take the first value (counted).
// Throws DataError on empty sparse input, ConfigError on unsorted inputs.
FilledSeries fill_piecewise_constant(const std::vector<TimedValue>& sparse,
                                     const std::vector<std::int64_t>& grid_s);

// Partition a dense series into 24 hour-of-day buckets.
std::array<std::vector<double>, 24> group_errors_by_hour(const std::vector<TimedValue>& dense);

// Signal-noise prediction: measurement ~ forecast + empirical error, clamped
// at 0 from below (negative-irradiance mass merges into 0). Empty dataset
// falls back to the zero-error singleton {max(0, forecast)}; the caller is
// expected to surface that condition (see PvModelReport).
EmpiricalDistribution predict_measurement_distribution(double forecast_wm2,
                                                       const std::vector<double>& error_dataset);

// Map an irradiance distribution through the plant: power = capacity·derate·g/1000.
EmpiricalDistribution irradiance_to_pv_power(const EmpiricalDistribution& irradiance,
                                             const PvPlant& plant);

// Fitting diagnostics surfaced by ingest.
struct PvModelReport {
    std::size_t usable_error_records = 0;
    std::size_t skipped_records = 0;
    std::size_t backfilled_hours = 0;
    std::array<std::size_t, 24> bucket_sizes{};
    std::array<bool, 24> empty_bucket_fallback{};  // hour used the zero-error singleton
};

// Full PV pipeline: errors → hourly fill → hour buckets → per-hour
// signal-noise prediction at reference_forecast_by_hour[h] → plant map →
// discretize to ≤ n_states.
CyclostationaryModel build_pv_model(const std::vector<WeatherRecord>& records,
                                    const PvPlant& plant, int n_states,
                                    const std::array<double, 24>& reference_forecast_by_hour,
                                    PvModelReport* report = nullptr);

// One load observation; load_kw is consumption, >= 0 as read from file.
struct LoadRecord {
    std::int64_t timestamp_s = 0;
    double load_kw = 0.0;
};

// Group by hour, negate to the internal sign convention (load <= 0),
// discretize each bucket. Throws DataError naming the first hour of day that
// has no observations.
CyclostationaryModel fit_load_model(const std::vector<LoadRecord>& records, int n_states,
                                    std::array<std::size_t, 24>* bucket_sizes = nullptr);

// Per-hour mean of available forecast values; hours without any forecast get
// 0 W/m² (flagged). This is how ingest derives reference_forecast_by_hour.
struct ReferenceForecast {
    std::array<double, 24> by_hour{};
    std::array<bool, 24> missing{};
};
ReferenceForecast mean_forecast_by_hour(const std::vector<WeatherRecord>& records);

// --- accuracy statistics ----------------------------------------------------

struct RmsAccuracy {
    double rms_error = 0.0;
    double percent_accuracy = 0.0;  // 100·(1 − rms_error/rms(reference))
};

// series_a is the reference. Throws ConfigError on length mismatch or empty
// input, DataError if rms(series_a) == 0 (accuracy undefined).
RmsAccuracy rms_accuracy(const std::vector<double>& series_a, const std::vector<double>& series_b);

// --- model file io ----------------------------------------------------------

// JSON model files: {"period_hours":24, "by_hour":[{"support":[...],"probs":[...]} ×24]}.
// Doubles are written shortest-round-trip so save→load→save is bit-exact.
void save_model_file(const CyclostationaryModel& model, const std::string& path);
CyclostationaryModel load_model_file(const std::string& path);

}  // namespace ngems
