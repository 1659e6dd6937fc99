#pragma once

#include <string>

#include "ngems/scenario.hpp"

namespace ngems {

// One executed control: grid transaction u (buy > 0) and battery power v
// (discharge > 0). Every decision produced by a policy satisfies the realized
// power balance e + u + v + l = 0 exactly by construction.
struct Decision {
    double u_kw = 0.0;
    double v_kw = 0.0;
};

// Decision rule queried once per stage with the realized disturbances.
class Policy {
public:
    virtual ~Policy() = default;
    virtual Decision decide(int k, double s_kwh, double e_kw, double l_kw,
                            const Scenario& scenario) const = 0;
    virtual std::string name() const = 0;
};

// Safety net shared by every policy: project a raw grid decision onto the
// per-realization feasible space and recover v from the balance.
Decision clamp_decision_to_feasible(double u_raw, double s_kwh, double e_kw, double l_kw,
                                    const Scenario& scenario);

// Heuristic 1, exhaustive storage dependence: the battery absorbs as much of
// the demand-supply gap as its joint power/state limits allow; the grid
// covers only the remainder.
Decision policy1_decide(int k, double s_kwh, double e_kw, double l_kw,
                        const Scenario& scenario);

// Heuristic 2, expectation lookahead over the next H hours. Four branches on
// (sign of present gap, sign of expected future gap): aligned surplus charges
// like policy 1; aligned deficit discharges at most half of what the battery
// could deliver this step; mixed signs leave the battery idle. Ties (gap or
// future exactly 0) classify as surplus.
Decision policy2_decide(int k, double s_kwh, double e_kw, double l_kw,
                        const Scenario& scenario, int lookahead_h = 3);

class ExhaustiveStoragePolicy final : public Policy {
public:
    Decision decide(int k, double s_kwh, double e_kw, double l_kw,
                    const Scenario& scenario) const override {
        return policy1_decide(k, s_kwh, e_kw, l_kw, scenario);
    }
    std::string name() const override { return "policy1"; }
};

class LookaheadPolicy final : public Policy {
public:
    explicit LookaheadPolicy(int lookahead_h) : lookahead_h_(lookahead_h) {}
    Decision decide(int k, double s_kwh, double e_kw, double l_kw,
                    const Scenario& scenario) const override {
        return policy2_decide(k, s_kwh, e_kw, l_kw, scenario, lookahead_h_);
    }
    std::string name() const override { return "policy2"; }

private:
    int lookahead_h_;
};

}  // namespace ngems
