#pragma once

#include <cstdint>

namespace ngems {

// Uniform decision-epoch grid. Stages k = 0..N-1 start at t0 + k*dt; the
// terminal epoch is t0 + N*dt. Internally everything downstream works in
// hours; the grid is the one place that touches raw epoch seconds.
struct TimeGrid {
    std::int64_t t0_s = 0;     // epoch seconds of stage 0
    std::int64_t dt_s = 3600;  // stage duration, seconds
    int n_stages = 0;          // N

    double dt_hours() const { return static_cast<double>(dt_s) / 3600.0; }
    std::int64_t time_at(int k) const { return t0_s + static_cast<std::int64_t>(k) * dt_s; }
};

// Validates span/step consistency: t_end > t_start, dt > 0, and the span must
// be an exact multiple of dt. Throws ConfigError otherwise.
TimeGrid build_time_grid(std::int64_t t_start_s, std::int64_t t_end_s, std::int64_t dt_s);

// Hour of day (0..23, UTC) of a raw epoch timestamp. Correct for pre-1970
// timestamps too (floor division, not truncation).
int hour_of_day(std::int64_t epoch_s);

// Hour of day of stage k. Valid for 0 <= k <= N so the terminal epoch can be
// priced as well.
int hour_of_day(const TimeGrid& grid, int k);

}  // namespace ngems
