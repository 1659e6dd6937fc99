#pragma once

#include <algorithm>
#include <vector>

namespace ngems {

// Closed real interval. empty() means lo > hi; an empty interval has zero
// measure and contains nothing.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return lo > hi; }
    double measure() const { return empty() ? 0.0 : hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    double clamp(double x) const { return std::min(hi, std::max(lo, x)); }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Storage element parameters. Power sign convention: v > 0 discharges (the
// battery feeds the bus), v < 0 charges. p_min <= 0 is the charge limit,
// p_max >= 0 the discharge limit, both as seen at the bus. Losses split by
// direction: charging stores xi_charge <= 1 of what flows in, discharging
// drains xi_discharge >= 1 per unit delivered; eta_s is per-stage standing
// retention.
struct BatterySpec {
    double capacity_kwh = 0.0;  // usable capacity S
    double p_min_kw = 0.0;      // <= 0
    double p_max_kw = 0.0;      // >= 0
    double eta_s = 1.0;         // (0, 1]
    double xi_charge = 1.0;     // (0, 1]
    double xi_discharge = 1.0;  // >= 1

    // Throws ConfigError on any parameter outside its range.
    void validate() const;

    double xi_for(double v_kw) const { return v_kw > 0.0 ? xi_discharge : xi_charge; }
};

// Floating-point dust tolerated when checking a state against [0, capacity].
constexpr double kStateTol = 1e-9;

// One-stage storage dynamics: s' = eta_s*s - xi(v)*v*dt. Throws
// InvariantError if s is outside [0, capacity] (beyond kStateTol) or if the
// update would leave it so; the result is snapped onto the box to shed dust.
double step_battery(double s_kwh, double v_kw, double dt_h, const BatterySpec& spec);

// Interval of grid transactions u keeping the *state* inside [0, capacity]
// for realized pv output e >= 0 and load l <= 0 (theta in the constraint
// development). Never empty for s in [0, capacity].
Interval state_constraint_interval(double s_kwh, double e_kw, double l_kw, double dt_h,
                                   const BatterySpec& spec);

// Interval of grid transactions u keeping the battery *power*
// v = -(u + e + l) inside [p_min, p_max] (gamma). Note the sign: large u
// (buying) pushes v toward its charge limit, so u's upper end maps to p_min.
Interval power_constraint_interval(double e_kw, double l_kw, const BatterySpec& spec);

// Intersection of the two: the set of admissible u for one (s, e, l)
// realization. Non-empty with positive measure whenever the configuration
// passed the sufficiency check.
Interval feasible_decision_space(double s_kwh, double e_kw, double l_kw, double dt_h,
                                 const BatterySpec& spec);

// Decisions admissible under *every* realization with e in [e_min, e_max],
// l in [l_min, l_max]: the intersection of feasible_decision_space over the
// box, which is attained at its corners. This is the set a controller can
// commit to before the disturbance is known. May be empty.
Interval determinable_feasible_space(double s_kwh, double e_min, double e_max, double l_min,
                                     double l_max, double dt_h, const BatterySpec& spec);

// Battery-power range [v_lo, v_hi] admissible at state s under both power
// limits and the state box; the u-intervals above are affine images of this.
// Always contains 0.
Interval feasible_battery_range(double s_kwh, double dt_h, const BatterySpec& spec);

// Per-stage disturbance envelope taken from the process models.
struct StageBounds {
    double e_min = 0.0;
    double e_max = 0.0;
    double l_min = 0.0;
    double l_max = 0.0;
};

// Which sufficiency condition certified the configuration. Tiers are ordered
// strongest to weakest: the horizon-sum test implies the per-stage-sum test,
// which implies the per-stage-gap test. kInfeasible means even the weakest
// tier failed, so no guarantee can be given.
enum class FeasibilityTier { kHorizonSum, kStageSum, kStageGap, kInfeasible };

struct FeasibilityReport {
    FeasibilityTier tier = FeasibilityTier::kInfeasible;
    bool guaranteed = false;   // non-empty determinable space at every state of every stage
    double power_bound = 0.0;  // B = min(p_max, -p_min, capacity/(xi_discharge*dt))
    bool symmetric_limits = true;  // p_min == -p_max; bound uses the tighter side otherwise

    double horizon_sum = 0.0;      // max_k e_max[k] - min_k l_min[k]
    double worst_stage_sum = 0.0;  // max_k (e_max[k] - l_min[k])
    int worst_stage_sum_k = -1;
    double worst_gap = 0.0;  // max_k ((e_max[k] + l_max[k]) - (e_min[k] + l_min[k]))
    int worst_gap_k = -1;
};

// Tiered sufficiency check for "every stage has a determinable feasible space
// of positive measure at every storage state". Throws ConfigError on empty
// bounds or inverted envelopes.
FeasibilityReport check_configuration_feasibility(const std::vector<StageBounds>& bounds,
                                                  double dt_h, const BatterySpec& spec);

}  // namespace ngems
