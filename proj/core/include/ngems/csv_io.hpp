#pragma once

#include <string>
#include <vector>

#include "ngems/models.hpp"

namespace ngems {

// Shortest round-trip decimal form of a double (std::to_chars): value-exact,
// locale-free, deterministic. All CSV/JSON number output flows through this
// or nlohmann's equivalent so reruns are byte-identical.
std::string format_double(double value);

// Weather CSV, header `timestamp_epoch_s,measured_wm2,forecast_wm2,horizon_h`.
// Empty measured/forecast fields mean missing; a row missing both is an
// error. All errors cite file:line.
std::vector<WeatherRecord> parse_weather_csv(const std::string& path);

// Load CSV, header `timestamp_epoch_s,load_kw` with load_kw >= 0.
std::vector<LoadRecord> parse_load_csv(const std::string& path);

}  // namespace ngems
