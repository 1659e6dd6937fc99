#include "ngems/time_grid.hpp"

#include <string>

#include "ngems/errors.hpp"

namespace ngems {

TimeGrid build_time_grid(std::int64_t t_start_s, std::int64_t t_end_s, std::int64_t dt_s) {
    if (dt_s <= 0) {
        throw ConfigError("time grid: dt must be positive, got " + std::to_string(dt_s) + " s");
    }
    if (t_end_s <= t_start_s) {
        throw ConfigError("time grid: end " + std::to_string(t_end_s) +
                          " must be after start " + std::to_string(t_start_s));
    }
    const std::int64_t span = t_end_s - t_start_s;
    if (span % dt_s != 0) {
        throw ConfigError("time grid: span " + std::to_string(span) +
                          " s is not a multiple of dt " + std::to_string(dt_s) + " s");
    }
    TimeGrid grid;
    grid.t0_s = t_start_s;
    grid.dt_s = dt_s;
    grid.n_stages = static_cast<int>(span / dt_s);
    return grid;
}

namespace {
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
}  // namespace

int hour_of_day(std::int64_t epoch_s) {
    const std::int64_t hours = floor_div(epoch_s, 3600);
    const std::int64_t h = ((hours % 24) + 24) % 24;
    return static_cast<int>(h);
}

int hour_of_day(const TimeGrid& grid, int k) {
    return hour_of_day(grid.time_at(k));
}

}  // namespace ngems
