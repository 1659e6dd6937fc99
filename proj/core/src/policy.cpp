#include "ngems/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngems/errors.hpp"

namespace ngems {

Decision clamp_decision_to_feasible(double u_raw, double s_kwh, double e_kw, double l_kw,
                                    const Scenario& scenario) {
    const Interval space = feasible_decision_space(s_kwh, e_kw, l_kw,
                                                   scenario.grid.dt_hours(), scenario.battery);
    if (space.empty()) {
        // Cannot happen for s in [0, capacity]: the state interval always
        // admits v = 0 and the power interval contains it too.
        throw InvariantError("clamp: empty feasible space at s=" + std::to_string(s_kwh));
    }
    const double u = space.clamp(u_raw);
    return {u, -(u + e_kw + l_kw)};
}

Decision policy1_decide(int /*k*/, double s_kwh, double e_kw, double l_kw,
                        const Scenario& scenario) {
    const double gap = e_kw + l_kw;  // > 0 surplus, < 0 deficit
    const Interval vr =
        feasible_battery_range(s_kwh, scenario.grid.dt_hours(), scenario.battery);
    // Battery-first: absorb (or cover) the whole gap if limits allow, and let
    // the grid take only what the battery cannot.
    const double v = vr.clamp(-gap);
    return {-(gap + v), v};
}

Decision policy2_decide(int k, double s_kwh, double e_kw, double l_kw,
                        const Scenario& scenario, int lookahead_h) {
    const double dt = scenario.grid.dt_hours();
    const double gap = e_kw + l_kw;

    // Expected net power over the next H hours (whole stages, truncated at
    // the end of the horizon). Deterministic by design: expectations, not
    // samples.
    const int n_ahead = static_cast<int>(std::floor(lookahead_h / dt + 1e-9));
    double future = 0.0;
    for (int i = k + 1; i <= k + n_ahead && i < scenario.grid.n_stages; ++i) {
        future += scenario.pv.expectation(scenario.grid, i) +
                  scenario.load.expectation(scenario.grid, i);
    }

    const bool present_surplus = gap >= 0.0;  // ties classify as surplus
    const bool future_surplus = future >= 0.0;
    const Interval vr = feasible_battery_range(s_kwh, dt, scenario.battery);

    double v = 0.0;
    if (present_surplus && future_surplus) {
        // Surplus now and later: store it before exporting, as policy 1 does.
        v = vr.clamp(-gap);
    } else if (!present_surplus && !future_surplus) {
        // Deficit now and later: hold half the deliverable energy in reserve
        // for the lean hours ahead, discharge at most the other half.
        v = std::min(-gap, 0.5 * vr.hi);
    } else {
        // Signs disagree: leave the storage untouched, trade the gap on the
        // grid. v = 0 is always feasible.
        v = 0.0;
    }
    return {-(gap + v), v};
}

}  // namespace ngems
