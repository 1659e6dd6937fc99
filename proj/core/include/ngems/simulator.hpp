#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ngems/policy.hpp"
#include "ngems/scenario.hpp"

namespace ngems {

// One executed stage of a rollout.
struct StageRecord {
    double s_kwh = 0.0;       // state at stage start
    double e_kw = 0.0;        // realized pv
    double l_kw = 0.0;        // realized load (<= 0)
    double u_kw = 0.0;        // executed grid transaction
    double v_kw = 0.0;        // executed battery power
    double stage_cost_usd = 0.0;
};

// Full record of one closed-loop run. Power balance holds to 1e-9 kW at
// every stage; states never leave [0, capacity].
struct Trajectory {
    std::vector<StageRecord> stages;      // N entries
    double terminal_soc_kwh = 0.0;        // s_N
    double monetary_terminal_usd = 0.0;   // g1 = -s_N * c_s(t_N)
    double reserve_terminal_usd = 0.0;    // g  = m * (capacity - s_N) * c_s(t_N)

    // Realized money J1: stage costs plus g1. The comparison metric.
    double total_j1() const;
    // Objective-flavored total: stage costs plus the reserve penalty g.
    double total_j() const;
};

// Pre-sampled disturbance stream: one (e, l) pair per stage. Streams are
// derived from (seed, rollout index) so every policy compared under the same
// seed sees the same realizations (common random numbers).
struct RealizationStream {
    std::vector<std::pair<double, double>> el;
};

RealizationStream sample_stream(const Scenario& scenario, std::uint64_t seed,
                                std::uint64_t rollout_index);

// Execute one rollout against a given stream. Throws InvariantError with the
// stage index, policy name, and a state dump on any balance/state/power
// violation.
Trajectory rollout(const Policy& policy, const Scenario& scenario,
                   const RealizationStream& stream);

// Convenience overload: samples rollout index 0 of `seed`.
Trajectory rollout(const Policy& policy, const Scenario& scenario, std::uint64_t seed);

// Suffix sums of stage costs with the monetary terminal folded in:
// out[k] = sum of stage costs k..N-1 plus g1, and out[N] = g1. out[0] is J1.
std::vector<double> realized_cost_to_go(const Trajectory& trajectory);

// Per-policy Monte Carlo summary.
struct PolicyStats {
    std::string policy;
    double mean_j1 = 0.0;
    double std_j1 = 0.0;        // sample standard deviation
    double ci95_half = 0.0;     // 1.96 * std / sqrt(n)
    double mean_j = 0.0;
    double mean_terminal_soc = 0.0;
    std::size_t n = 0;
    std::size_t violations = 0;  // always 0 in a delivered report
    std::vector<double> mean_cost_to_go;  // length N+1, averaged over rollouts
};

// n_rollouts independent seeded rollouts; deterministic given (seed,
// n_rollouts) regardless of thread count.
PolicyStats monte_carlo(const Policy& policy, const Scenario& scenario,
                        std::size_t n_rollouts, std::uint64_t seed, int threads = 1);

struct CostReport {
    std::vector<PolicyStats> policies;
    std::uint64_t seed = 0;
    std::size_t n_rollouts = 0;
    std::string solve_span;  // "full", "day", or "" when no optimal policy ran
};

// Evaluate >= 2 policies under common random numbers: rollout r of every
// policy consumes the identical (e, l) stream.
CostReport compare_policies(const std::vector<const Policy*>& policies,
                            const Scenario& scenario, std::size_t n_rollouts,
                            std::uint64_t seed, int threads = 1);

// --- exports ----------------------------------------------------------------

// CSV with header k,s_kwh,e_kw,l_kw,u_kw,v_kw,stage_cost_usd; one row per
// stage plus a terminal row carrying s_N and g1 in the cost column.
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

// Report JSON (per policy: mean_j1, std_j1, ci95, mean_terminal_soc, n, plus
// logged extras); write -> read -> write is byte-identical.
void save_report(const CostReport& report, const std::string& path);
CostReport load_report(const std::string& path);

// Per-stage mean realized cost-to-go, one column per policy.
void write_cost_to_go_csv(const CostReport& report, const std::string& path);

}  // namespace ngems
