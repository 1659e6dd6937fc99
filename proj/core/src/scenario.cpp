#include "ngems/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "ngems/errors.hpp"

namespace ngems {

void Scenario::validate() const {
    if (grid.n_stages < 1) {
        throw ConfigError("scenario: horizon must contain at least one stage");
    }
    battery.validate();
    pricing.validate();
    if (!(terminal_multiplier >= 1.0)) {
        throw ConfigError("scenario: terminal_multiplier must be >= 1, got " +
                          std::to_string(terminal_multiplier));
    }
    if (initial_soc_kwh < 0.0 || initial_soc_kwh > battery.capacity_kwh) {
        throw ConfigError("scenario: initial_soc_kwh " + std::to_string(initial_soc_kwh) +
                          " outside [0, " + std::to_string(battery.capacity_kwh) + "]");
    }
    if (lookahead_h < 0) {
        throw ConfigError("scenario: lookahead_h must be >= 0");
    }
    for (int h = 0; h < 24; ++h) {
        if (pv.at_hour(h).min() < 0.0) {
            throw ConfigError("scenario: pv model hour " + std::to_string(h) +
                              " has negative support (generation must be >= 0)");
        }
        if (load.at_hour(h).max() > 0.0) {
            throw ConfigError("scenario: load model hour " + std::to_string(h) +
                              " has positive support (consumption must be <= 0 internally)");
        }
    }
}

StageBounds Scenario::stage_bounds(int k) const {
    const auto [e_min, e_max] = pv.bounds(grid, k);
    const auto [l_min, l_max] = load.bounds(grid, k);
    return {e_min, e_max, l_min, l_max};
}

std::vector<StageBounds> Scenario::horizon_bounds() const {
    std::vector<StageBounds> out;
    out.reserve(static_cast<std::size_t>(grid.n_stages));
    for (int k = 0; k < grid.n_stages; ++k) out.push_back(stage_bounds(k));
    return out;
}

namespace {
using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError("config: missing key '" + where + key + "'");
    }
    return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number()) {
        throw ConfigError("config: '" + where + key + "' must be a number");
    }
    return v.get<double>();
}

std::int64_t require_int(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number_integer()) {
        throw ConfigError("config: '" + where + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

double number_or(const json& j, const char* key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw ConfigError(std::string("config: '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

std::array<double, 24> require_hour_array(const json& j, const char* key,
                                          const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_array() || v.size() != 24) {
        throw ConfigError("config: '" + where + key + "' must be an array of 24 numbers");
    }
    std::array<double, 24> out{};
    for (std::size_t h = 0; h < 24; ++h) {
        if (!v.at(h).is_number()) {
            throw ConfigError("config: '" + where + key + "' must contain only numbers");
        }
        out[h] = v.at(h).get<double>();
    }
    return out;
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_string()) {
        throw ConfigError("config: '" + where + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::string resolve_path(const std::string& raw, const std::filesystem::path& config_dir) {
    std::filesystem::path p(raw);
    if (p.is_absolute()) return p.string();
    return (config_dir / p).lexically_normal().string();
}
}  // namespace

LoadedScenario load_scenario_file(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        throw ConfigError("config: cannot open " + config_path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config " + config_path + ": " + e.what());
    }
    const std::filesystem::path config_dir =
        std::filesystem::path(config_path).parent_path();

    const json& horizon = require(j, "horizon", "");
    TimeGrid grid = build_time_grid(require_int(horizon, "start_epoch_s", "horizon."),
                                    require_int(horizon, "end_epoch_s", "horizon."),
                                    require_int(horizon, "dt_s", "horizon."));

    const json& bat = require(j, "battery", "");
    BatterySpec battery;
    battery.capacity_kwh = require_number(bat, "capacity_kwh", "battery.");
    battery.p_min_kw = require_number(bat, "p_min_kw", "battery.");
    battery.p_max_kw = require_number(bat, "p_max_kw", "battery.");
    battery.eta_s = number_or(bat, "eta_s", 1.0);
    battery.xi_charge = number_or(bat, "xi_charge", 1.0);
    battery.xi_discharge = number_or(bat, "xi_discharge", 1.0);

    const json& pricing_j = require(j, "pricing", "");
    PricingSchedule pricing;
    pricing.buy_per_hour = require_hour_array(pricing_j, "buy_per_hour", "pricing.");
    pricing.sell_per_hour = require_hour_array(pricing_j, "sell_per_hour", "pricing.");

    const std::string pv_path = resolve_path(require_string(j, "pv_model", ""), config_dir);
    const std::string load_path = resolve_path(require_string(j, "load_model", ""), config_dir);

    LoadedScenario out{.scenario = Scenario{.grid = grid,
                                            .battery = battery,
                                            .pricing = pricing,
                                            .pv = load_model_file(pv_path),
                                            .load = load_model_file(load_path),
                                            .terminal_multiplier =
                                                number_or(j, "terminal_multiplier", 1.0),
                                            .initial_soc_kwh =
                                                require_number(j, "initial_soc_kwh", ""),
                                            .lookahead_h = 3},
                       .pv_model_path = pv_path,
                       .load_model_path = load_path,
                       .value_table_path = std::nullopt};

    if (j.contains("lookahead_h")) {
        if (!j.at("lookahead_h").is_number_integer()) {
            throw ConfigError("config: 'lookahead_h' must be an integer");
        }
        out.scenario.lookahead_h = j.at("lookahead_h").get<int>();
    }
    if (j.contains("value_table")) {
        out.value_table_path = resolve_path(require_string(j, "value_table", ""), config_dir);
    }

    out.scenario.validate();
    return out;
}

}  // namespace ngems
