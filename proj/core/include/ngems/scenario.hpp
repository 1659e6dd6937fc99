#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngems/battery.hpp"
#include "ngems/models.hpp"
#include "ngems/pricing.hpp"
#include "ngems/time_grid.hpp"

namespace ngems {

// Everything a solver, policy, or simulator needs to know about one problem
// instance: horizon, battery, tariff, fitted processes, terminal incentive,
// and the starting state.
struct Scenario {
    TimeGrid grid;
    BatterySpec battery;
    PricingSchedule pricing;
    CyclostationaryModel pv;    // support >= 0 (generation)
    CyclostationaryModel load;  // support <= 0 (consumption, negated)
    double terminal_multiplier = 1.0;  // m >= 1
    double initial_soc_kwh = 0.0;      // s0 in [0, capacity]
    int lookahead_h = 3;               // policy2 horizon, hours

    // Cross-field checks beyond what the members enforce themselves; throws
    // ConfigError with the offending field named.
    void validate() const;

    // Stage-k disturbance envelope from the model supports.
    StageBounds stage_bounds(int k) const;
    std::vector<StageBounds> horizon_bounds() const;  // stages 0..N-1

    // Sufficiency check over the whole horizon.
    FeasibilityReport feasibility() const {
        return check_configuration_feasibility(horizon_bounds(), grid.dt_hours(), battery);
    }
};

// A scenario as loaded from a config file, plus the file-level extras that
// belong to the CLI layer (model/table paths already resolved relative to
// the config's directory).
struct LoadedScenario {
    Scenario scenario;
    std::string pv_model_path;
    std::string load_model_path;
    std::optional<std::string> value_table_path;
};

// Parse a JSON scenario config (see README for the key set), load the model
// files it references, validate everything. Throws ConfigError/DataError
// naming the offending key or file.
LoadedScenario load_scenario_file(const std::string& config_path);

}  // namespace ngems
