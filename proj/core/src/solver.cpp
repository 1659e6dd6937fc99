#include "ngems/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <utility>

#include "json.hpp"
#include "ngems/errors.hpp"
#include "ngems/parallel.hpp"
#include "ngems/pricing.hpp"

namespace ngems {

StateGrid build_state_grid(const BatterySpec& battery, int n_states) {
    battery.validate();
    if (n_states < 2) {
        throw ConfigError("state grid: n_states must be >= 2, got " + std::to_string(n_states));
    }
    StateGrid grid;
    grid.points.reserve(static_cast<std::size_t>(n_states));
    for (int j = 0; j < n_states; ++j) {
        grid.points.push_back(battery.capacity_kwh * static_cast<double>(j) /
                              static_cast<double>(n_states - 1));
    }
    grid.points.front() = 0.0;
    grid.points.back() = battery.capacity_kwh;  // exact endpoints per invariant
    grid.spacing = battery.capacity_kwh / static_cast<double>(n_states - 1);
    return grid;
}

int nearest_index(const StateGrid& grid, double s_kwh) {
    const double s = std::min(grid.points.back(), std::max(0.0, s_kwh));
    const double x = s / grid.spacing;
    int j = static_cast<int>(std::floor(x + 0.5));
    if (static_cast<double>(j) - x == 0.5) --j;  // exact midpoint -> lower index
    return std::min(static_cast<int>(grid.points.size()) - 1, std::max(0, j));
}

namespace {

// Interpolation core shared by the solver (table rows) and the oracle
// (recursive evaluation): identical arithmetic guarantees identical doubles.
// row_at(j) supplies the value at grid index j.
template <typename RowAt>
double interpolate_with(RowAt row_at, const StateGrid& grid, double s_kwh) {
    const double cap = grid.points.back();
    const double s = std::min(cap, std::max(0.0, s_kwh));
    const double x = s / grid.spacing;
    const std::size_t last = grid.points.size() - 1;
    std::size_t j = static_cast<std::size_t>(std::min<double>(
        static_cast<double>(last - 1), std::max(0.0, std::floor(x))));
    double frac = x - static_cast<double>(j);
    // Snap queries that are a rounding hair away from a grid point so
    // grid-point lookups are exact.
    const double snap = 1e-9;
    if (frac <= snap) return row_at(j);
    if (frac >= 1.0 - snap) return row_at(j + 1);
    return (1.0 - frac) * row_at(j) + frac * row_at(j + 1);
}

// Deterministic preference order: lower cost, then smaller |u|, then smaller u.
bool better_candidate(double cost, double u, double best_cost, double best_u) {
    if (cost < best_cost) return true;
    if (cost > best_cost) return false;
    const double au = std::abs(u);
    const double ab = std::abs(best_u);
    if (au < ab) return true;
    if (au > ab) return false;
    return u < best_u;
}

struct Best {
    double cost = 0.0;
    double u = 0.0;
};

// Minimize L(u) + E[next_value_at(s')] over the candidate set for state s at
// stage k. next_value_at(s') values the successor state however the caller
// defines (table row or recursive oracle).
template <typename NextValueAt>
Best minimize_stage(int k, double s_kwh, const Interval& space, int n_decisions,
                    const Scenario& scenario, NextValueAt next_value_at) {
    const std::vector<double> candidates = decision_candidates(space, n_decisions);
    const auto& pe = scenario.pv.at_stage(scenario.grid, k);
    const auto& pl = scenario.load.at_stage(scenario.grid, k);
    const double dt = scenario.grid.dt_hours();

    Best best;
    bool have_best = false;
    for (double u : candidates) {
        double expected = 0.0;
        for (std::size_t i = 0; i < pe.size(); ++i) {
            for (std::size_t j = 0; j < pl.size(); ++j) {
                const double v = -(u + pe.support()[i] + pl.support()[j]);
                const double s_next = step_battery(s_kwh, v, dt, scenario.battery);
                expected += pe.probs()[i] * pl.probs()[j] * next_value_at(s_next);
            }
        }
        const double cost = stage_cost(u, scenario.grid, k, scenario.pricing) + expected;
        if (!have_best || better_candidate(cost, u, best.cost, best.u)) {
            best = {cost, u};
            have_best = true;
        }
    }
    return best;
}

Interval stage_space(const Scenario& scenario, const StageBounds& b, double s_kwh) {
    return determinable_feasible_space(s_kwh, b.e_min, b.e_max, b.l_min, b.l_max,
                                       scenario.grid.dt_hours(), scenario.battery);
}

[[noreturn]] void throw_empty_space(int k, double s_kwh) {
    throw InfeasibleConfigError(
        "solver: empty determinable feasible space at stage " + std::to_string(k) +
        ", state " + std::to_string(s_kwh) +
        " kWh; run the feasibility check (cmd: check) on this configuration");
}

}  // namespace

double interpolate_value(const std::vector<double>& row, const StateGrid& grid, double s_kwh) {
    return interpolate_with([&](std::size_t j) { return row[j]; }, grid, s_kwh);
}

std::vector<double> decision_candidates(const Interval& space, int n_decisions) {
    if (space.empty()) {
        throw InvariantError("candidates: empty interval");
    }
    if (n_decisions < 2) {
        throw ConfigError("candidates: n_decisions must be >= 2, got " +
                          std::to_string(n_decisions));
    }
    std::vector<double> out;
    if (space.measure() == 0.0) {
        out.push_back(space.lo);
        return out;
    }
    out.reserve(static_cast<std::size_t>(n_decisions) + 1);
    const double span = space.hi - space.lo;
    for (int i = 0; i < n_decisions; ++i) {
        out.push_back(space.lo + span * static_cast<double>(i) /
                                     static_cast<double>(n_decisions - 1));
    }
    out.front() = space.lo;
    out.back() = space.hi;  // exact endpoints regardless of rounding
    if (space.lo < 0.0 && space.hi > 0.0) out.push_back(0.0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double expected_next_value(int k, double s_kwh, double u_kw,
                           const std::vector<double>& value_next, const Scenario& scenario,
                           const StateGrid& grid) {
    const auto& pe = scenario.pv.at_stage(scenario.grid, k);
    const auto& pl = scenario.load.at_stage(scenario.grid, k);
    const double dt = scenario.grid.dt_hours();
    double expected = 0.0;
    for (std::size_t i = 0; i < pe.size(); ++i) {
        for (std::size_t j = 0; j < pl.size(); ++j) {
            const double v = -(u_kw + pe.support()[i] + pl.support()[j]);
            const double s_next = step_battery(s_kwh, v, dt, scenario.battery);
            expected += pe.probs()[i] * pl.probs()[j] * interpolate_value(value_next, grid, s_next);
        }
    }
    return expected;
}

BackupRow bellman_backup(int k, const std::vector<double>& value_next,
                         const Scenario& scenario, const StateGrid& grid, int n_decisions,
                         int threads) {
    const StageBounds b = scenario.stage_bounds(k);
    const std::size_t n = grid.points.size();
    BackupRow row;
    row.value.assign(n, 0.0);
    row.decision.assign(n, 0.0);
    parallel_for(n, threads, [&](std::size_t j) {
        const double s = grid.points[j];
        const Interval space = stage_space(scenario, b, s);
        if (space.empty()) throw_empty_space(k, s);
        const Best best =
            minimize_stage(k, s, space, n_decisions, scenario, [&](double s_next) {
                return interpolate_value(value_next, grid, s_next);
            });
        row.value[j] = best.cost;
        row.decision[j] = best.u;
    });
    return row;
}

ValueTable solve_backward(const Scenario& scenario, int n_states, int n_decisions,
                          int threads) {
    const StateGrid grid = build_state_grid(scenario.battery, n_states);
    const int N = scenario.grid.n_stages;

    ValueTable table;
    table.grid = grid;
    table.time = scenario.grid;
    table.value.assign(static_cast<std::size_t>(N) + 1, {});
    table.decision.assign(static_cast<std::size_t>(N), {});

    auto& terminal = table.value[static_cast<std::size_t>(N)];
    terminal.reserve(grid.points.size());
    for (double s : grid.points) {
        terminal.push_back(terminal_cost(s, scenario.terminal_multiplier, scenario.battery,
                                         scenario.grid, scenario.pricing));
    }
    for (int k = N - 1; k >= 0; --k) {
        BackupRow row = bellman_backup(k, table.value[static_cast<std::size_t>(k) + 1],
                                       scenario, grid, n_decisions, threads);
        table.value[static_cast<std::size_t>(k)] = std::move(row.value);
        table.decision[static_cast<std::size_t>(k)] = std::move(row.decision);
    }
    return table;
}

ValueTable brute_force_oracle(const Scenario& scenario, int n_states, int n_decisions) {
    const StateGrid grid = build_state_grid(scenario.battery, n_states);
    const int N = scenario.grid.n_stages;

    std::size_t max_pairs = 1;
    for (int k = 0; k < N; ++k) {
        max_pairs = std::max(max_pairs, scenario.pv.at_stage(scenario.grid, k).size() *
                                            scenario.load.at_stage(scenario.grid, k).size());
    }
    const double paths =
        std::pow(static_cast<double>(grid.points.size()) * n_decisions *
                     static_cast<double>(max_pairs),
                 N);
    if (paths > 1e7) {
        throw ConfigError("oracle: instance too large (" + std::to_string(paths) +
                          " estimated paths exceed 1e7); shrink the horizon, grids, or supports");
    }

    std::vector<StageBounds> bounds;
    bounds.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) bounds.push_back(scenario.stage_bounds(k));

    // Naive recursive evaluation: the value at (k, j) re-derives every
    // successor value from scratch. Deliberately no memoization -- this is
    // the independent check that backward induction collapses the tree
    // correctly.
    std::function<Best(int, std::size_t)> evaluate = [&](int k, std::size_t j) -> Best {
        const double s = grid.points[j];
        const Interval space = stage_space(scenario, bounds[static_cast<std::size_t>(k)], s);
        if (space.empty()) throw_empty_space(k, s);
        return minimize_stage(k, s, space, n_decisions, scenario, [&](double s_next) {
            return interpolate_with(
                [&](std::size_t jj) {
                    const int next = k + 1;
                    if (next == N) {
                        return terminal_cost(grid.points[jj], scenario.terminal_multiplier,
                                             scenario.battery, scenario.grid,
                                             scenario.pricing);
                    }
                    return evaluate(next, jj).cost;
                },
                grid, s_next);
        });
    };

    ValueTable table;
    table.grid = grid;
    table.time = scenario.grid;
    table.value.assign(static_cast<std::size_t>(N) + 1, {});
    table.decision.assign(static_cast<std::size_t>(N), {});
    for (std::size_t j = 0; j < grid.points.size(); ++j) {
        table.value[static_cast<std::size_t>(N)].push_back(
            terminal_cost(grid.points[j], scenario.terminal_multiplier, scenario.battery,
                          scenario.grid, scenario.pricing));
    }
    for (int k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < grid.points.size(); ++j) {
            const Best best = evaluate(k, j);
            table.value[static_cast<std::size_t>(k)].push_back(best.cost);
            table.decision[static_cast<std::size_t>(k)].push_back(best.u);
        }
    }
    return table;
}

Decision near_optimal_decide(int k, double s_kwh, double e_kw, double l_kw,
                             const ValueTable& table, const Scenario& scenario) {
    const int j = nearest_index(table.grid, s_kwh);
    const double u_raw = table.decision[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return clamp_decision_to_feasible(u_raw, s_kwh, e_kw, l_kw, scenario);
}

NearOptimalPolicy::NearOptimalPolicy(ValueTable table, SolveSpan span)
    : table_(std::move(table)), span_(span) {}

void NearOptimalPolicy::validate_for(const Scenario& scenario) const {
    if (table_.time.dt_s != scenario.grid.dt_s) {
        throw ConfigError("value table: solved with dt " + std::to_string(table_.time.dt_s) +
                          " s but scenario uses " + std::to_string(scenario.grid.dt_s) + " s");
    }
    if (hour_of_day(table_.time, 0) != hour_of_day(scenario.grid, 0)) {
        throw ConfigError("value table: solved starting at hour " +
                          std::to_string(hour_of_day(table_.time, 0)) +
                          " but scenario starts at hour " +
                          std::to_string(hour_of_day(scenario.grid, 0)));
    }
    if (table_.grid.points.back() != scenario.battery.capacity_kwh) {
        throw ConfigError("value table: solved for capacity " +
                          std::to_string(table_.grid.points.back()) + " kWh but scenario has " +
                          std::to_string(scenario.battery.capacity_kwh) + " kWh");
    }
    if (span_ == SolveSpan::kFull) {
        if (table_.time.n_stages != scenario.grid.n_stages) {
            throw ConfigError("value table: covers " + std::to_string(table_.time.n_stages) +
                              " stages but scenario has " +
                              std::to_string(scenario.grid.n_stages) +
                              " (solve the full horizon or use the day span)");
        }
    } else {
        if (table_.time.n_stages * table_.time.dt_s != 86400) {
            throw ConfigError("value table: day span requires a table covering exactly 24 h");
        }
        if (scenario.grid.n_stages % table_.time.n_stages != 0) {
            throw ConfigError("value table: day span requires the horizon to be a whole "
                              "number of days");
        }
    }
}

Decision NearOptimalPolicy::decide(int k, double s_kwh, double e_kw, double l_kw,
                                   const Scenario& scenario) const {
    int kk = k;
    if (span_ == SolveSpan::kDay) kk = k % table_.time.n_stages;
    if (kk < 0 || static_cast<std::size_t>(kk) >= table_.decision.size()) {
        throw InvariantError("value table: stage " + std::to_string(k) +
                             " outside the solved range");
    }
    return near_optimal_decide(kk, s_kwh, e_kw, l_kw, table_, scenario);
}

// --- table file io ----------------------------------------------------------

namespace {
using nlohmann::json;
}

void save_value_table(const ValueTable& table, const std::string& path) {
    json j;
    j["t0_s"] = table.time.t0_s;
    j["dt_s"] = table.time.dt_s;
    j["n_stages"] = table.time.n_stages;
    j["n_states"] = table.grid.points.size();
    j["spacing_kwh"] = table.grid.spacing;
    j["grid_points_kwh"] = table.grid.points;
    j["V"] = table.value;
    j["U_star"] = table.decision;
    std::ofstream out(path);
    if (!out) {
        throw DataError("value table: cannot open " + path + " for writing");
    }
    out << j.dump(2) << '\n';
}

ValueTable load_value_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("value table: cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("value table " + path + ": " + e.what());
    }

    ValueTable table;
    try {
        table.time.t0_s = j.at("t0_s").get<std::int64_t>();
        table.time.dt_s = j.at("dt_s").get<std::int64_t>();
        table.time.n_stages = j.at("n_stages").get<int>();
        table.grid.spacing = j.at("spacing_kwh").get<double>();
        table.grid.points = j.at("grid_points_kwh").get<std::vector<double>>();
        table.value = j.at("V").get<std::vector<std::vector<double>>>();
        table.decision = j.at("U_star").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
        throw DataError("value table " + path + ": " + e.what());
    }

    const std::size_t n_states = table.grid.points.size();
    if (n_states < 2 || table.time.n_stages < 1 ||
        table.value.size() != static_cast<std::size_t>(table.time.n_stages) + 1 ||
        table.decision.size() != static_cast<std::size_t>(table.time.n_stages)) {
        throw DataError("value table " + path + ": inconsistent dimensions");
    }
    for (const auto& row : table.value) {
        if (row.size() != n_states) {
            throw DataError("value table " + path + ": ragged V rows");
        }
    }
    for (const auto& row : table.decision) {
        if (row.size() != n_states) {
            throw DataError("value table " + path + ": ragged U_star rows");
        }
    }
    return table;
}

}  // namespace ngems
