#pragma once

#include <string>
#include <vector>

#include "ngems/policy.hpp"
#include "ngems/scenario.hpp"

namespace ngems {

// Uniform quantization of the storage state space [0, capacity].
struct StateGrid {
    std::vector<double> points;  // strictly increasing; front()==0, back()==capacity
    double spacing = 0.0;        // capacity / (n_states - 1)
};

// Throws ConfigError if n_states < 2.
StateGrid build_state_grid(const BatterySpec& battery, int n_states);

// Index of the grid point closest to s; exact midpoints resolve to the lower
// index. s is clamped into [0, capacity] first.
int nearest_index(const StateGrid& grid, double s_kwh);

// Piecewise-linear interpolation of a value row at state s (clamped into the
// grid range). Queries within 1e-9 grid spacings of a grid point return that
// point's value exactly.
double interpolate_value(const std::vector<double>& row, const StateGrid& grid, double s_kwh);

// Solved cost-to-go and decision tables. value has N+1 rows (terminal row
// included), decision has N rows; each row spans the state grid. The time
// grid the table was solved on rides along so a table can be validated
// against the scenario it is later applied to.
struct ValueTable {
    std::vector<std::vector<double>> value;     // $(N+1) x N_s$
    std::vector<std::vector<double>> decision;  // N x N_s, optimal u (kW)
    StateGrid grid;
    TimeGrid time;
};

// Candidate grid decisions for one determinable interval: n_decisions
// uniformly spaced points including both endpoints, plus 0 when it lies
// strictly inside. Sorted, deduplicated. n_decisions >= 2 unless the
// interval is a single point.
std::vector<double> decision_candidates(const Interval& space, int n_decisions);

// Expectation of the interpolated next-stage value over the joint (pv, load)
// support at stage k, for grid decision u taken at state s.
double expected_next_value(int k, double s_kwh, double u_kw,
                           const std::vector<double>& value_next, const Scenario& scenario,
                           const StateGrid& grid);

struct BackupRow {
    std::vector<double> value;
    std::vector<double> decision;
};

// One Bellman backup: for every grid state, minimize stage cost plus
// expected next value over the candidate set drawn from the determinable
// feasible space. Ties break toward smaller |u|, then smaller u. Throws
// InfeasibleConfigError naming the stage/state if a determinable space is
// empty.
BackupRow bellman_backup(int k, const std::vector<double>& value_next,
                         const Scenario& scenario, const StateGrid& grid, int n_decisions,
                         int threads = 1);

// Full backward induction: terminal row = reserve penalty g, then rows
// N-1..0. Deterministic for fixed inputs regardless of thread count.
ValueTable solve_backward(const Scenario& scenario, int n_states, int n_decisions,
                          int threads = 1);

// Test oracle: the same minimization evaluated by naive recursive expectation
// over the full decision/realization tree -- no value-table reuse, so its
// cost grows exponentially with the horizon. Same candidate sets, same
// interpolation, same tie-breaks as solve_backward. Throws ConfigError when
// the estimated path count (N_s·n_decisions·pairs)^N exceeds 1e7.
ValueTable brute_force_oracle(const Scenario& scenario, int n_states, int n_decisions);

// Closed-loop rule for the solved policy: look up U_star at the nearest grid
// state, project it onto the realized feasible space, let v absorb the
// balance.
Decision near_optimal_decide(int k, double s_kwh, double e_kw, double l_kw,
                             const ValueTable& table, const Scenario& scenario);

// Whether a table solved on a shorter (24 h) grid is tiled across the
// horizon or must cover it outright.
enum class SolveSpan { kFull, kDay };

class NearOptimalPolicy final : public Policy {
public:
    explicit NearOptimalPolicy(ValueTable table, SolveSpan span = SolveSpan::kFull);

    // Checks the table fits the scenario (stage count, dt, hour alignment;
    // day span additionally needs a 24 h table tiling the horizon evenly).
    // Throws ConfigError with the mismatch named.
    void validate_for(const Scenario& scenario) const;

    Decision decide(int k, double s_kwh, double e_kw, double l_kw,
                    const Scenario& scenario) const override;
    std::string name() const override { return "optimal"; }

    const ValueTable& table() const { return table_; }

private:
    ValueTable table_;
    SolveSpan span_;
};

// JSON export/import of a ValueTable; save -> load -> save is byte-identical.
void save_value_table(const ValueTable& table, const std::string& path);
ValueTable load_value_table(const std::string& path);

}  // namespace ngems
