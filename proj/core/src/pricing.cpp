#include "ngems/pricing.hpp"

#include <cmath>
#include <string>

#include "ngems/errors.hpp"

namespace ngems {

void PricingSchedule::validate() const {
    for (int h = 0; h < 24; ++h) {
        const double cp = buy_per_hour[static_cast<std::size_t>(h)];
        const double cs = sell_per_hour[static_cast<std::size_t>(h)];
        if (!std::isfinite(cp) || !std::isfinite(cs)) {
            throw ConfigError("pricing: non-finite price at hour " + std::to_string(h));
        }
        if (cs < 0.0) {
            throw ConfigError("pricing: sell price must be >= 0, got " + std::to_string(cs) +
                              " at hour " + std::to_string(h));
        }
    }
}

double stage_cost(double u_kw, const TimeGrid& grid, int k, const PricingSchedule& sched) {
    const double price = u_kw > 0.0 ? sched.buy_at(grid, k) : sched.sell_at(grid, k);
    return price * u_kw * grid.dt_hours();
}

double transaction_cost(const std::vector<double>& u_seq, const TimeGrid& grid,
                        const PricingSchedule& sched) {
    if (u_seq.size() > static_cast<std::size_t>(grid.n_stages)) {
        throw ConfigError("transaction_cost: " + std::to_string(u_seq.size()) +
                          " decisions exceed the " + std::to_string(grid.n_stages) +
                          "-stage horizon");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < u_seq.size(); ++k) {
        total += stage_cost(u_seq[k], grid, static_cast<int>(k), sched);
    }
    return total;
}

double terminal_cost(double expected_s_n_kwh, double multiplier, const BatterySpec& battery,
                     const TimeGrid& grid, const PricingSchedule& sched) {
    return multiplier * (battery.capacity_kwh - expected_s_n_kwh) *
           sched.sell_at(grid, grid.n_stages);
}

double monetary_terminal(double s_n_kwh, const TimeGrid& grid, const PricingSchedule& sched) {
    return -s_n_kwh * sched.sell_at(grid, grid.n_stages);
}

}  // namespace ngems
