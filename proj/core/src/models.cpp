#include "ngems/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "ngems/errors.hpp"

namespace ngems {

const EmpiricalDistribution& CyclostationaryModel::at_hour(int hour) const {
    if (hour < 0 || hour > 23) {
        throw InvariantError("model: hour " + std::to_string(hour) + " outside 0..23");
    }
    return by_hour_[static_cast<std::size_t>(hour)];
}

void PvPlant::validate() const {
    if (!(capacity_kw > 0.0)) {
        throw ConfigError("pv plant: capacity must be positive, got " +
                          std::to_string(capacity_kw) + " kW");
    }
    if (!(derate > 0.0 && derate <= 1.0)) {
        throw ConfigError("pv plant: derate must be in (0, 1], got " + std::to_string(derate));
    }
}

namespace {
// EmpiricalDistribution deliberately has no default constructor, so arrays of
// hour models start from zero singletons and get overwritten.
template <std::size_t... I>
std::array<EmpiricalDistribution, 24> zero_singletons_impl(std::index_sequence<I...>) {
    return {((void)I, EmpiricalDistribution::singleton(0.0))...};
}
std::array<EmpiricalDistribution, 24> zero_singletons() {
    return zero_singletons_impl(std::make_index_sequence<24>{});
}
}  // namespace

ForecastErrorSeries compute_forecast_errors(const std::vector<WeatherRecord>& records) {
    ForecastErrorSeries out;
    for (const auto& r : records) {
        if (r.measured_wm2 && r.forecast_wm2) {
            out.errors.push_back({r.timestamp_s, *r.measured_wm2 - *r.forecast_wm2});
        } else {
            ++out.skipped;
        }
    }
    if (out.errors.empty()) {
        throw DataError("weather data: no record carries both measured and forecast irradiance");
    }
    return out;
}

FilledSeries fill_piecewise_constant(const std::vector<TimedValue>& sparse,
                                     const std::vector<std::int64_t>& grid_s) {
    if (sparse.empty()) {
        throw DataError("fill: empty sparse series");
    }
    for (std::size_t i = 1; i < sparse.size(); ++i) {
        if (sparse[i].timestamp_s < sparse[i - 1].timestamp_s) {
            throw ConfigError("fill: sparse series not sorted by timestamp");
        }
    }
    for (std::size_t i = 1; i < grid_s.size(); ++i) {
        if (grid_s[i] < grid_s[i - 1]) {
            throw ConfigError("fill: grid not sorted by timestamp");
        }
    }

    FilledSeries out;
    out.dense.reserve(grid_s.size());
    std::size_t idx = 0;  // last observation at or before the current grid point
    for (std::int64_t t : grid_s) {
        while (idx + 1 < sparse.size() && sparse[idx + 1].timestamp_s <= t) ++idx;
        if (t < sparse.front().timestamp_s) {
            out.dense.push_back({t, sparse.front().value});
            ++out.backfilled;
        } else {
            out.dense.push_back({t, sparse[idx].value});
        }
    }
    return out;
}

std::array<std::vector<double>, 24> group_errors_by_hour(const std::vector<TimedValue>& dense) {
    std::array<std::vector<double>, 24> buckets;
    for (const auto& tv : dense) {
        buckets[static_cast<std::size_t>(hour_of_day(tv.timestamp_s))].push_back(tv.value);
    }
    return buckets;
}

EmpiricalDistribution predict_measurement_distribution(double forecast_wm2,
                                                       const std::vector<double>& error_dataset) {
    if (error_dataset.empty()) {
        // Forecast taken as truth; the caller flags this hour.
        return EmpiricalDistribution::singleton(std::max(0.0, forecast_wm2));
    }
    std::vector<std::pair<double, double>> pts;
    pts.reserve(error_dataset.size());
    for (double e : error_dataset) {
        pts.emplace_back(std::max(0.0, forecast_wm2 + e), 1.0);
    }
    return EmpiricalDistribution::from_weighted(std::move(pts));
}

EmpiricalDistribution irradiance_to_pv_power(const EmpiricalDistribution& irradiance,
                                             const PvPlant& plant) {
    plant.validate();
    const double coef = plant.capacity_kw * plant.derate / 1000.0;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(irradiance.size());
    for (std::size_t i = 0; i < irradiance.size(); ++i) {
        pts.emplace_back(coef * irradiance.support()[i], irradiance.probs()[i]);
    }
    return EmpiricalDistribution::from_weighted(std::move(pts));
}

CyclostationaryModel build_pv_model(const std::vector<WeatherRecord>& records,
                                    const PvPlant& plant, int n_states,
                                    const std::array<double, 24>& reference_forecast_by_hour,
                                    PvModelReport* report) {
    plant.validate();
    ForecastErrorSeries raw = compute_forecast_errors(records);
    std::stable_sort(raw.errors.begin(), raw.errors.end(),
                     [](const TimedValue& a, const TimedValue& b) {
                         return a.timestamp_s < b.timestamp_s;
                     });

    // Hourly grid spanning the usable error observations.
    const std::int64_t first_h = raw.errors.front().timestamp_s / 3600;
    const std::int64_t last_h = raw.errors.back().timestamp_s / 3600;
    std::vector<std::int64_t> grid;
    grid.reserve(static_cast<std::size_t>(last_h - first_h + 1));
    for (std::int64_t h = first_h; h <= last_h; ++h) grid.push_back(h * 3600);

    const FilledSeries dense = fill_piecewise_constant(raw.errors, grid);
    const auto buckets = group_errors_by_hour(dense.dense);

    PvModelReport rep;
    rep.usable_error_records = raw.errors.size();
    rep.skipped_records = raw.skipped;
    rep.backfilled_hours = dense.backfilled;

    std::array<EmpiricalDistribution, 24> by_hour = zero_singletons();
    for (int h = 0; h < 24; ++h) {
        const auto& bucket = buckets[static_cast<std::size_t>(h)];
        rep.bucket_sizes[static_cast<std::size_t>(h)] = bucket.size();
        rep.empty_bucket_fallback[static_cast<std::size_t>(h)] = bucket.empty();
        const EmpiricalDistribution irr =
            predict_measurement_distribution(reference_forecast_by_hour[static_cast<std::size_t>(h)],
                                             bucket);
        by_hour[static_cast<std::size_t>(h)] =
            discretize(irradiance_to_pv_power(irr, plant), n_states);
    }
    if (report) *report = rep;
    return CyclostationaryModel(std::move(by_hour));
}

CyclostationaryModel fit_load_model(const std::vector<LoadRecord>& records, int n_states,
                                    std::array<std::size_t, 24>* bucket_sizes) {
    std::array<std::vector<double>, 24> buckets;
    for (const auto& r : records) {
        if (r.load_kw < 0.0) {
            throw DataError("load data: negative consumption " + std::to_string(r.load_kw) +
                            " kW at t=" + std::to_string(r.timestamp_s));
        }
        // Negate to the internal convention: load draws power, l <= 0.
        buckets[static_cast<std::size_t>(hour_of_day(r.timestamp_s))].push_back(-r.load_kw);
    }
    std::array<EmpiricalDistribution, 24> by_hour = zero_singletons();
    for (int h = 0; h < 24; ++h) {
        const auto& bucket = buckets[static_cast<std::size_t>(h)];
        if (bucket.empty()) {
            throw DataError("load data: no records for hour " + std::to_string(h));
        }
        if (bucket_sizes) (*bucket_sizes)[static_cast<std::size_t>(h)] = bucket.size();
        by_hour[static_cast<std::size_t>(h)] = discretize(bucket, n_states);
    }
    return CyclostationaryModel(std::move(by_hour));
}

ReferenceForecast mean_forecast_by_hour(const std::vector<WeatherRecord>& records) {
    std::array<double, 24> sums{};
    std::array<std::size_t, 24> counts{};
    for (const auto& r : records) {
        if (!r.forecast_wm2) continue;
        const auto h = static_cast<std::size_t>(hour_of_day(r.timestamp_s));
        sums[h] += *r.forecast_wm2;
        ++counts[h];
    }
    ReferenceForecast out;
    for (std::size_t h = 0; h < 24; ++h) {
        if (counts[h] == 0) {
            out.by_hour[h] = 0.0;
            out.missing[h] = true;
        } else {
            out.by_hour[h] = sums[h] / static_cast<double>(counts[h]);
        }
    }
    return out;
}

RmsAccuracy rms_accuracy(const std::vector<double>& series_a,
                         const std::vector<double>& series_b) {
    if (series_a.empty() || series_a.size() != series_b.size()) {
        throw ConfigError("rms_accuracy: series must be equal-length and non-empty");
    }
    double sq_err = 0.0;
    double sq_ref = 0.0;
    for (std::size_t i = 0; i < series_a.size(); ++i) {
        const double d = series_a[i] - series_b[i];
        sq_err += d * d;
        sq_ref += series_a[i] * series_a[i];
    }
    const double n = static_cast<double>(series_a.size());
    RmsAccuracy out;
    out.rms_error = std::sqrt(sq_err / n);
    const double rms_ref = std::sqrt(sq_ref / n);
    if (rms_ref == 0.0) {
        throw DataError("rms_accuracy: reference series is identically zero");
    }
    out.percent_accuracy = 100.0 * (1.0 - out.rms_error / rms_ref);
    return out;
}

// --- model file io ----------------------------------------------------------

namespace {
using nlohmann::json;

json distribution_to_json(const EmpiricalDistribution& d) {
    return json{{"support", d.support()}, {"probs", d.probs()}};
}

EmpiricalDistribution distribution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("support") || !j.contains("probs")) {
        throw DataError("model file: entry must be an object with support and probs");
    }
    return EmpiricalDistribution(j.at("support").get<std::vector<double>>(),
                                 j.at("probs").get<std::vector<double>>());
}
}  // namespace

void save_model_file(const CyclostationaryModel& model, const std::string& path) {
    json j;
    j["period_hours"] = 24;
    json arr = json::array();
    for (int h = 0; h < 24; ++h) arr.push_back(distribution_to_json(model.at_hour(h)));
    j["by_hour"] = std::move(arr);

    std::ofstream out(path);
    if (!out) {
        throw DataError("model file: cannot open " + path + " for writing");
    }
    out << j.dump(2) << '\n';
}

CyclostationaryModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("model file: cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("model file " + path + ": " + e.what());
    }
    if (!j.contains("by_hour") || !j.at("by_hour").is_array() || j.at("by_hour").size() != 24) {
        throw DataError("model file " + path + ": expected 24 by_hour entries");
    }
    std::array<EmpiricalDistribution, 24> by_hour = zero_singletons();
    for (int h = 0; h < 24; ++h) {
        try {
            by_hour[static_cast<std::size_t>(h)] =
                distribution_from_json(j.at("by_hour").at(static_cast<std::size_t>(h)));
        } catch (const DataError& e) {
            throw DataError("model file " + path + ", hour " + std::to_string(h) + ": " +
                            e.what());
        }
    }
    return CyclostationaryModel(std::move(by_hour));
}

}  // namespace ngems
