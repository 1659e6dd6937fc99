#include "ngems/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ngems/csv_io.hpp"
#include "ngems/errors.hpp"
#include "ngems/parallel.hpp"
#include "ngems/pricing.hpp"
#include "ngems/rng.hpp"

namespace ngems {

namespace {
constexpr double kBalanceTol = 1e-9;  // kW
constexpr double kPowerTol = 1e-9;    // kW dust on limit checks
}  // namespace

double Trajectory::total_j1() const {
    double total = monetary_terminal_usd;
    for (const auto& st : stages) total += st.stage_cost_usd;
    return total;
}

double Trajectory::total_j() const {
    double total = reserve_terminal_usd;
    for (const auto& st : stages) total += st.stage_cost_usd;
    return total;
}

RealizationStream sample_stream(const Scenario& scenario, std::uint64_t seed,
                                std::uint64_t rollout_index) {
    Rng rng = Rng::substream(seed, rollout_index);
    RealizationStream stream;
    stream.el.reserve(static_cast<std::size_t>(scenario.grid.n_stages));
    for (int k = 0; k < scenario.grid.n_stages; ++k) {
        const double e = scenario.pv.sample(scenario.grid, k, rng);
        const double l = scenario.load.sample(scenario.grid, k, rng);
        stream.el.emplace_back(e, l);
    }
    return stream;
}

Trajectory rollout(const Policy& policy, const Scenario& scenario,
                   const RealizationStream& stream) {
    const int N = scenario.grid.n_stages;
    if (stream.el.size() != static_cast<std::size_t>(N)) {
        throw InvariantError("rollout: stream has " + std::to_string(stream.el.size()) +
                             " stages, scenario needs " + std::to_string(N));
    }

    Trajectory traj;
    traj.stages.reserve(static_cast<std::size_t>(N));
    double s = scenario.initial_soc_kwh;
    for (int k = 0; k < N; ++k) {
        const auto [e, l] = stream.el[static_cast<std::size_t>(k)];
        const Decision d = policy.decide(k, s, e, l, scenario);

        const auto dump = [&](const std::string& what) {
            std::ostringstream os;
            os << what << " at stage " << k << " under policy " << policy.name()
               << ": s=" << s << " kWh, e=" << e << ", l=" << l << ", u=" << d.u_kw
               << ", v=" << d.v_kw << " kW";
            return os.str();
        };
        const double residual = e + d.u_kw + d.v_kw + l;
        if (std::abs(residual) > kBalanceTol) {
            throw InvariantError(dump("power balance violated by " + std::to_string(residual) +
                                      " kW"));
        }
        if (d.v_kw < scenario.battery.p_min_kw - kPowerTol ||
            d.v_kw > scenario.battery.p_max_kw + kPowerTol) {
            throw InvariantError(dump("battery power outside limits"));
        }

        StageRecord rec;
        rec.s_kwh = s;
        rec.e_kw = e;
        rec.l_kw = l;
        rec.u_kw = d.u_kw;
        rec.v_kw = d.v_kw;
        rec.stage_cost_usd = stage_cost(d.u_kw, scenario.grid, k, scenario.pricing);
        traj.stages.push_back(rec);

        try {
            s = step_battery(s, d.v_kw, scenario.grid.dt_hours(), scenario.battery);
        } catch (const InvariantError& e2) {
            throw InvariantError(dump(std::string("state excursion (") + e2.what() + ")"));
        }
    }
    traj.terminal_soc_kwh = s;
    traj.monetary_terminal_usd = monetary_terminal(s, scenario.grid, scenario.pricing);
    traj.reserve_terminal_usd = terminal_cost(s, scenario.terminal_multiplier,
                                              scenario.battery, scenario.grid,
                                              scenario.pricing);
    return traj;
}

Trajectory rollout(const Policy& policy, const Scenario& scenario, std::uint64_t seed) {
    return rollout(policy, scenario, sample_stream(scenario, seed, 0));
}

std::vector<double> realized_cost_to_go(const Trajectory& trajectory) {
    const std::size_t N = trajectory.stages.size();
    std::vector<double> out(N + 1, 0.0);
    out[N] = trajectory.monetary_terminal_usd;
    for (std::size_t k = N; k-- > 0;) {
        out[k] = out[k + 1] + trajectory.stages[k].stage_cost_usd;
    }
    return out;
}

PolicyStats monte_carlo(const Policy& policy, const Scenario& scenario,
                        std::size_t n_rollouts, std::uint64_t seed, int threads) {
    if (n_rollouts < 1) {
        throw ConfigError("monte_carlo: n_rollouts must be >= 1");
    }
    std::vector<Trajectory> trajectories(n_rollouts);
    parallel_for(n_rollouts, threads, [&](std::size_t r) {
        try {
            trajectories[r] =
                rollout(policy, scenario, sample_stream(scenario, seed, r));
        } catch (const InvariantError& e) {
            throw InvariantError(std::string(e.what()) + " (seed " + std::to_string(seed) +
                                 ", rollout " + std::to_string(r) + ")");
        }
    });

    // Sequential reduction in rollout order: thread count never changes the
    // reported numbers.
    PolicyStats stats;
    stats.policy = policy.name();
    stats.n = n_rollouts;
    const std::size_t series_len = trajectories.front().stages.size() + 1;
    stats.mean_cost_to_go.assign(series_len, 0.0);

    double sum_j1 = 0.0;
    double sum_j = 0.0;
    double sum_soc = 0.0;
    for (const auto& t : trajectories) {
        sum_j1 += t.total_j1();
        sum_j += t.total_j();
        sum_soc += t.terminal_soc_kwh;
        const auto ctg = realized_cost_to_go(t);
        for (std::size_t k = 0; k < series_len; ++k) stats.mean_cost_to_go[k] += ctg[k];
    }
    const double n = static_cast<double>(n_rollouts);
    stats.mean_j1 = sum_j1 / n;
    stats.mean_j = sum_j / n;
    stats.mean_terminal_soc = sum_soc / n;
    for (double& v : stats.mean_cost_to_go) v /= n;

    if (n_rollouts > 1) {
        double ss = 0.0;
        for (const auto& t : trajectories) {
            const double d = t.total_j1() - stats.mean_j1;
            ss += d * d;
        }
        stats.std_j1 = std::sqrt(ss / (n - 1.0));
        stats.ci95_half = 1.96 * stats.std_j1 / std::sqrt(n);
    }
    return stats;
}

CostReport compare_policies(const std::vector<const Policy*>& policies,
                            const Scenario& scenario, std::size_t n_rollouts,
                            std::uint64_t seed, int threads) {
    if (policies.size() < 2) {
        throw ConfigError("compare: need at least 2 policies");
    }
    CostReport report;
    report.seed = seed;
    report.n_rollouts = n_rollouts;
    for (const Policy* p : policies) {
        // Streams depend only on (seed, rollout index), so every policy sees
        // identical realizations -- the common-random-numbers discipline.
        report.policies.push_back(monte_carlo(*p, scenario, n_rollouts, seed, threads));
    }
    return report;
}

// --- exports ----------------------------------------------------------------

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("trajectory: cannot open " + path + " for writing");
    }
    out << "k,s_kwh,e_kw,l_kw,u_kw,v_kw,stage_cost_usd\n";
    for (std::size_t k = 0; k < trajectory.stages.size(); ++k) {
        const auto& st = trajectory.stages[k];
        out << k << ',' << format_double(st.s_kwh) << ',' << format_double(st.e_kw) << ','
            << format_double(st.l_kw) << ',' << format_double(st.u_kw) << ','
            << format_double(st.v_kw) << ',' << format_double(st.stage_cost_usd) << '\n';
    }
    // Terminal row: final state and the monetary settlement g1.
    out << trajectory.stages.size() << ',' << format_double(trajectory.terminal_soc_kwh)
        << ",0,0,0,0," << format_double(trajectory.monetary_terminal_usd) << '\n';
}

namespace {
using nlohmann::json;

json stats_to_json(const PolicyStats& s) {
    return json{{"policy", s.policy},
                {"mean_j1", s.mean_j1},
                {"std_j1", s.std_j1},
                {"ci95", s.ci95_half},
                {"mean_j", s.mean_j},
                {"mean_terminal_soc", s.mean_terminal_soc},
                {"n", s.n},
                {"violations", s.violations},
                {"mean_cost_to_go", s.mean_cost_to_go}};
}

PolicyStats stats_from_json(const json& j) {
    PolicyStats s;
    s.policy = j.at("policy").get<std::string>();
    s.mean_j1 = j.at("mean_j1").get<double>();
    s.std_j1 = j.at("std_j1").get<double>();
    s.ci95_half = j.at("ci95").get<double>();
    s.mean_j = j.at("mean_j").get<double>();
    s.mean_terminal_soc = j.at("mean_terminal_soc").get<double>();
    s.n = j.at("n").get<std::size_t>();
    s.violations = j.at("violations").get<std::size_t>();
    s.mean_cost_to_go = j.at("mean_cost_to_go").get<std::vector<double>>();
    return s;
}
}  // namespace

void save_report(const CostReport& report, const std::string& path) {
    json j;
    j["seed"] = report.seed;
    j["n_rollouts"] = report.n_rollouts;
    j["solve_span"] = report.solve_span;
    json arr = json::array();
    for (const auto& s : report.policies) arr.push_back(stats_to_json(s));
    j["policies"] = std::move(arr);
    std::ofstream out(path);
    if (!out) {
        throw DataError("report: cannot open " + path + " for writing");
    }
    out << j.dump(2) << '\n';
}

CostReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("report: cannot open " + path);
    }
    json j;
    try {
        in >> j;
        CostReport report;
        report.seed = j.at("seed").get<std::uint64_t>();
        report.n_rollouts = j.at("n_rollouts").get<std::size_t>();
        report.solve_span = j.at("solve_span").get<std::string>();
        for (const auto& item : j.at("policies")) {
            report.policies.push_back(stats_from_json(item));
        }
        return report;
    } catch (const json::exception& e) {
        throw DataError("report " + path + ": " + e.what());
    }
}

void write_cost_to_go_csv(const CostReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cost-to-go: cannot open " + path + " for writing");
    }
    out << "k";
    for (const auto& s : report.policies) out << ',' << s.policy;
    out << '\n';
    if (report.policies.empty()) return;
    const std::size_t len = report.policies.front().mean_cost_to_go.size();
    for (std::size_t k = 0; k < len; ++k) {
        out << k;
        for (const auto& s : report.policies) {
            out << ',' << format_double(s.mean_cost_to_go[k]);
        }
        out << '\n';
    }
}

}  // namespace ngems
