#pragma once

#include <array>
#include <vector>

#include "ngems/battery.hpp"
#include "ngems/time_grid.hpp"

namespace ngems {

// Time-of-use tariff at hourly resolution: c_p (buy) and c_s (sell) per hour
// of day, $/kWh. Prices are scenario inputs; no tariff structure beyond the
// 24-slot vectors is modeled.
struct PricingSchedule {
    std::array<double, 24> buy_per_hour{};   // c_p
    std::array<double, 24> sell_per_hour{};  // c_s, must be >= 0

    double buy_at(const TimeGrid& grid, int k) const {
        return buy_per_hour[static_cast<std::size_t>(hour_of_day(grid, k))];
    }
    double sell_at(const TimeGrid& grid, int k) const {
        return sell_per_hour[static_cast<std::size_t>(hour_of_day(grid, k))];
    }

    // All finite; sell >= 0 (the terminal reserve incentive needs it).
    void validate() const;
};

// One-stage transaction cost L(u): buying (u > 0) costs c_p·u·dt, selling
// (u <= 0) earns c_s·u·dt (non-positive). k indexes the stage whose hour
// picks the price.
double stage_cost(double u_kw, const TimeGrid& grid, int k, const PricingSchedule& sched);

// Sum of stage costs for decisions u_seq[0..n-1] applied from stage 0.
// Throws ConfigError if the sequence is longer than the horizon.
double transaction_cost(const std::vector<double>& u_seq, const TimeGrid& grid,
                        const PricingSchedule& sched);

// Optimization-side terminal cost g = m·(capacity − expected_s_N)·c_s(t_N):
// a reserve penalty that pushes the solver toward ending full. Always >= 0.
double terminal_cost(double expected_s_n_kwh, double multiplier, const BatterySpec& battery,
                     const TimeGrid& grid, const PricingSchedule& sched);

// Realized-money terminal value g1 = −s_N·c_s(t_N): leftover charge valued
// at the terminal sell price. Always <= 0. Policy comparison uses this one.
double monetary_terminal(double s_n_kwh, const TimeGrid& grid, const PricingSchedule& sched);

}  // namespace ngems
