#include "ngems/battery.hpp"

#include <cmath>
#include <string>

#include "ngems/errors.hpp"

namespace ngems {

void BatterySpec::validate() const {
    if (!(capacity_kwh > 0.0)) {
        throw ConfigError("battery: capacity must be positive, got " +
                          std::to_string(capacity_kwh) + " kWh");
    }
    if (!(p_min_kw <= 0.0)) {
        throw ConfigError("battery: p_min must be <= 0 (charging), got " +
                          std::to_string(p_min_kw) + " kW");
    }
    if (!(p_max_kw >= 0.0)) {
        throw ConfigError("battery: p_max must be >= 0 (discharging), got " +
                          std::to_string(p_max_kw) + " kW");
    }
    if (!(eta_s > 0.0 && eta_s <= 1.0)) {
        throw ConfigError("battery: eta_s must be in (0, 1], got " + std::to_string(eta_s));
    }
    if (!(xi_charge > 0.0 && xi_charge <= 1.0)) {
        throw ConfigError("battery: xi_charge must be in (0, 1], got " +
                          std::to_string(xi_charge));
    }
    if (!(xi_discharge >= 1.0)) {
        throw ConfigError("battery: xi_discharge must be >= 1, got " +
                          std::to_string(xi_discharge));
    }
}

double step_battery(double s_kwh, double v_kw, double dt_h, const BatterySpec& spec) {
    if (s_kwh < -kStateTol || s_kwh > spec.capacity_kwh + kStateTol) {
        throw InvariantError("battery: state " + std::to_string(s_kwh) +
                             " kWh outside [0, " + std::to_string(spec.capacity_kwh) + "]");
    }
    const double next = spec.eta_s * s_kwh - spec.xi_for(v_kw) * v_kw * dt_h;
    if (next < -kStateTol || next > spec.capacity_kwh + kStateTol) {
        throw InvariantError("battery: step from " + std::to_string(s_kwh) + " kWh with v=" +
                             std::to_string(v_kw) + " kW over " + std::to_string(dt_h) +
                             " h lands at " + std::to_string(next) + " kWh, outside [0, " +
                             std::to_string(spec.capacity_kwh) + "]");
    }
    return std::min(spec.capacity_kwh, std::max(0.0, next));
}

Interval state_constraint_interval(double s_kwh, double e_kw, double l_kw, double dt_h,
                                   const BatterySpec& spec) {
    // v = -(u+e+l); the state stays in [0, capacity] iff
    //   -eta*s/(xi_dis*dt) <= u+e+l <= (capacity - eta*s)/(xi_chg*dt),
    // the lower arm limited by draining to empty (discharge efficiency), the
    // upper by charging to full (charge efficiency).
    const double held = spec.eta_s * s_kwh;
    const double lo = -held / (spec.xi_discharge * dt_h) - e_kw - l_kw;
    const double hi = (spec.capacity_kwh - held) / (spec.xi_charge * dt_h) - e_kw - l_kw;
    return {lo, hi};
}

Interval power_constraint_interval(double e_kw, double l_kw, const BatterySpec& spec) {
    // v in [p_min, p_max] maps to u in [-p_max, -p_min] - e - l: buying more
    // (larger u) pushes the battery toward its charge limit p_min.
    return {-spec.p_max_kw - e_kw - l_kw, -spec.p_min_kw - e_kw - l_kw};
}

Interval feasible_decision_space(double s_kwh, double e_kw, double l_kw, double dt_h,
                                 const BatterySpec& spec) {
    return intersect(state_constraint_interval(s_kwh, e_kw, l_kw, dt_h, spec),
                     power_constraint_interval(e_kw, l_kw, spec));
}

Interval determinable_feasible_space(double s_kwh, double e_min, double e_max, double l_min,
                                     double l_max, double dt_h, const BatterySpec& spec) {
    // Both interval ends are affine in (e, l) with slope -1, so the
    // intersection over the whole box is the intersection over its corners.
    Interval r = feasible_decision_space(s_kwh, e_min, l_min, dt_h, spec);
    r = intersect(r, feasible_decision_space(s_kwh, e_min, l_max, dt_h, spec));
    r = intersect(r, feasible_decision_space(s_kwh, e_max, l_min, dt_h, spec));
    r = intersect(r, feasible_decision_space(s_kwh, e_max, l_max, dt_h, spec));
    return r;
}

Interval feasible_battery_range(double s_kwh, double dt_h, const BatterySpec& spec) {
    const double held = spec.eta_s * s_kwh;
    const double lo = std::max(spec.p_min_kw,
                               -(spec.capacity_kwh - held) / (spec.xi_charge * dt_h));
    const double hi = std::min(spec.p_max_kw, held / (spec.xi_discharge * dt_h));
    return {lo, hi};
}

FeasibilityReport check_configuration_feasibility(const std::vector<StageBounds>& bounds,
                                                  double dt_h, const BatterySpec& spec) {
    spec.validate();
    if (!(dt_h > 0.0)) {
        throw ConfigError("feasibility: dt must be positive, got " + std::to_string(dt_h) + " h");
    }
    if (bounds.empty()) {
        throw ConfigError("feasibility: no stage bounds given");
    }
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        const auto& b = bounds[k];
        if (b.e_min > b.e_max || b.l_min > b.l_max) {
            throw ConfigError("feasibility: inverted envelope at stage " + std::to_string(k));
        }
        if (b.e_min < 0.0 || b.l_max > 0.0) {
            // The tier ordering proofs need pv >= 0 and load <= 0.
            throw ConfigError("feasibility: stage " + std::to_string(k) +
                              " violates sign convention (pv >= 0, load <= 0)");
        }
    }

    FeasibilityReport rep;
    // B bounds the disturbance spread the battery can absorb at any state:
    // the limiting cases are an empty battery forced to discharge-cover and a
    // full one forced to charge-absorb; eta_s discounts what a full battery
    // still holds after standing losses.
    rep.power_bound = std::min({spec.p_max_kw, -spec.p_min_kw,
                                spec.eta_s * spec.capacity_kwh / (spec.xi_discharge * dt_h)});
    rep.symmetric_limits = (spec.p_min_kw == -spec.p_max_kw);

    double e_max_all = bounds[0].e_max;
    double l_min_all = bounds[0].l_min;
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        const auto& b = bounds[k];
        e_max_all = std::max(e_max_all, b.e_max);
        l_min_all = std::min(l_min_all, b.l_min);
        const double stage_sum = b.e_max - b.l_min;
        if (rep.worst_stage_sum_k < 0 || stage_sum > rep.worst_stage_sum) {
            rep.worst_stage_sum = stage_sum;
            rep.worst_stage_sum_k = static_cast<int>(k);
        }
        const double gap = (b.e_max + b.l_max) - (b.e_min + b.l_min);
        if (rep.worst_gap_k < 0 || gap > rep.worst_gap) {
            rep.worst_gap = gap;
            rep.worst_gap_k = static_cast<int>(k);
        }
    }
    rep.horizon_sum = e_max_all - l_min_all;

    const double B = rep.power_bound;
    if (rep.horizon_sum <= B) {
        rep.tier = FeasibilityTier::kHorizonSum;
    } else if (rep.worst_stage_sum <= B) {
        rep.tier = FeasibilityTier::kStageSum;
    } else if (rep.worst_gap <= B) {
        rep.tier = FeasibilityTier::kStageGap;
    } else {
        rep.tier = FeasibilityTier::kInfeasible;
    }
    rep.guaranteed = rep.tier != FeasibilityTier::kInfeasible;
    return rep;
}

}  // namespace ngems
