#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "ngems/csv_io.hpp"
#include "ngems/errors.hpp"
#include "ngems/manifest.hpp"
#include "ngems/models.hpp"
#include "ngems/scenario.hpp"
#include "ngems/simulator.hpp"
#include "ngems/solver.hpp"

namespace fs = std::filesystem;

namespace ngems::cli {

namespace {

std::string join_path(const std::string& dir, const char* file) {
    return (fs::path(dir) / file).string();
}

void ensure_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) {
        throw ConfigError("--out directory is required");
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());
    }
}

SolveSpan parse_span(const std::string& s) {
    if (s == "full") return SolveSpan::kFull;
    if (s == "day") return SolveSpan::kDay;
    throw ConfigError("--solve-span must be 'day' or 'full', got '" + s + "'");
}

// Owns whichever policy the name selects; loads the value table for
// `optimal`.
struct PolicyBundle {
    std::unique_ptr<Policy> policy;
    bool is_optimal = false;
};

PolicyBundle make_policy(const std::string& name, const Scenario& scenario,
                         const LoadedScenario& loaded, const std::string& table_override,
                         SolveSpan span) {
    PolicyBundle b;
    if (name == "policy1") {
        b.policy = std::make_unique<ExhaustiveStoragePolicy>();
    } else if (name == "policy2") {
        b.policy = std::make_unique<LookaheadPolicy>(scenario.lookahead_h);
    } else if (name == "optimal") {
        std::string table_path = table_override;
        if (table_path.empty() && loaded.value_table_path) {
            table_path = *loaded.value_table_path;
        }
        if (table_path.empty()) {
            throw ConfigError(
                "policy 'optimal' needs a value table: run `ngems solve --config <cfg> "
                "--out <dir>` first, then set 'value_table' in the config or pass --table");
        }
        auto p = std::make_unique<NearOptimalPolicy>(load_value_table(table_path), span);
        p->validate_for(scenario);
        b.policy = std::move(p);
        b.is_optimal = true;
    } else {
        throw ConfigError("unknown policy '" + name +
                          "' (expected policy1, policy2, or optimal)");
    }
    return b;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void print_stats_line(const PolicyStats& s) {
    std::cout << "  " << s.policy << ": mean J1 = " << s.mean_j1 << " +/- " << s.ci95_half
              << " (std " << s.std_j1 << "), mean J = " << s.mean_j
              << ", mean terminal SOC = " << s.mean_terminal_soc << " kWh, n = " << s.n
              << "\n";
}

}  // namespace

void cmd_ingest(const IngestOptions& opt, const GlobalOptions& g) {
    const auto records = parse_weather_csv(opt.weather_csv);
    const auto loads = parse_load_csv(opt.load_csv);

    const ReferenceForecast ref = mean_forecast_by_hour(records);
    PvPlant plant{opt.pv_capacity_kw, opt.pv_derate};
    PvModelReport pv_report;
    const CyclostationaryModel pv =
        build_pv_model(records, plant, opt.n_states, ref.by_hour, &pv_report);
    std::array<std::size_t, 24> load_sizes{};
    const CyclostationaryModel load = fit_load_model(loads, opt.n_states, &load_sizes);

    ensure_out_dir(opt.out_dir);
    save_model_file(pv, join_path(opt.out_dir, "pv_model.json"));
    save_model_file(load, join_path(opt.out_dir, "load_model.json"));

    nlohmann::json rep;
    rep["weather_records"] = records.size();
    rep["load_records"] = loads.size();
    rep["usable_error_records"] = pv_report.usable_error_records;
    rep["skipped_weather_records"] = pv_report.skipped_records;
    rep["backfilled_hours"] = pv_report.backfilled_hours;
    rep["pv_bucket_sizes"] = pv_report.bucket_sizes;
    rep["load_bucket_sizes"] = load_sizes;
    rep["reference_forecast_by_hour"] = ref.by_hour;
    rep["n_states"] = opt.n_states;
    rep["pv_capacity_kw"] = opt.pv_capacity_kw;
    rep["pv_derate"] = opt.pv_derate;
    {
        nlohmann::json hours = nlohmann::json::array();
        for (int h = 0; h < 24; ++h) {
            if (pv_report.empty_bucket_fallback[static_cast<std::size_t>(h)]) hours.push_back(h);
        }
        rep["empty_bucket_fallback_hours"] = std::move(hours);
    }
    {
        nlohmann::json hours = nlohmann::json::array();
        for (int h = 0; h < 24; ++h) {
            if (ref.missing[static_cast<std::size_t>(h)]) hours.push_back(h);
        }
        rep["hours_without_forecast"] = std::move(hours);
    }
    // In-sample forecast quality where both series exist; skipped when the
    // measured reference is identically zero.
    {
        std::vector<double> measured;
        std::vector<double> forecast;
        for (const auto& r : records) {
            if (r.measured_wm2 && r.forecast_wm2) {
                measured.push_back(*r.measured_wm2);
                forecast.push_back(*r.forecast_wm2);
            }
        }
        try {
            const RmsAccuracy acc = rms_accuracy(measured, forecast);
            rep["forecast_rms_error_wm2"] = acc.rms_error;
            rep["forecast_percent_accuracy"] = acc.percent_accuracy;
        } catch (const DataError&) {
        }
    }
    {
        std::ofstream out(join_path(opt.out_dir, "ingest_report.json"));
        if (!out) {
            throw DataError("cannot write ingest report in " + opt.out_dir);
        }
        out << rep.dump(2) << '\n';
    }

    RunManifest manifest;
    manifest.subcommand = "ingest";
    manifest.seed = g.seed;
    manifest.created_utc = utc_now_iso8601();
    manifest.input_hashes[opt.weather_csv] = hash_file(opt.weather_csv);
    manifest.input_hashes[opt.load_csv] = hash_file(opt.load_csv);
    manifest.flags["n_states"] = std::to_string(opt.n_states);
    manifest.flags["pv_capacity_kw"] = format_double(opt.pv_capacity_kw);
    manifest.flags["pv_derate"] = format_double(opt.pv_derate);
    write_manifest(manifest, opt.out_dir);

    std::cout << "ingest: " << records.size() << " weather rows (" << pv_report.skipped_records
              << " skipped), " << loads.size() << " load rows\n"
              << "  wrote pv_model.json, load_model.json, ingest_report.json to "
              << opt.out_dir << "\n";
}

int cmd_check(const CheckOptions& opt, const GlobalOptions&) {
    const LoadedScenario loaded = load_scenario_file(opt.config);
    const FeasibilityReport rep = loaded.scenario.feasibility();

    const char* tier_name = "none";
    switch (rep.tier) {
        case FeasibilityTier::kHorizonSum: tier_name = "(i) horizon envelope"; break;
        case FeasibilityTier::kStageSum: tier_name = "(ii) per-stage spread"; break;
        case FeasibilityTier::kStageGap: tier_name = "(iii) per-stage gap"; break;
        case FeasibilityTier::kInfeasible: break;
    }

    std::cout << "feasibility check: " << opt.config << "\n"
              << "  power bound B = " << rep.power_bound << " kW"
              << (rep.symmetric_limits ? "" : " (asymmetric limits; tighter side used)")
              << "\n"
              << "  tier (i)   horizon envelope " << rep.horizon_sum << " kW -> "
              << (rep.horizon_sum <= rep.power_bound ? "PASS" : "FAIL") << "\n"
              << "  tier (ii)  worst stage spread " << rep.worst_stage_sum << " kW (stage "
              << rep.worst_stage_sum_k << ") -> "
              << (rep.worst_stage_sum <= rep.power_bound ? "PASS" : "FAIL") << "\n"
              << "  tier (iii) worst stage gap " << rep.worst_gap << " kW (stage "
              << rep.worst_gap_k << ") -> "
              << (rep.worst_gap <= rep.power_bound ? "PASS" : "FAIL") << "\n";
    if (rep.guaranteed) {
        std::cout << "  verdict: PASS via tier " << tier_name << "\n";
        return 0;
    }
    std::cout << "  verdict: FAIL (no sufficiency tier holds; a determinable feasible space "
                 "may be empty at some state)\n";
    return 2;
}

void cmd_solve(const SolveOptions& opt, const GlobalOptions& g) {
    const LoadedScenario loaded = load_scenario_file(opt.config);
    const Scenario& scenario = loaded.scenario;

    const FeasibilityReport rep = scenario.feasibility();
    if (!rep.guaranteed && !opt.force_infeasible) {
        throw InfeasibleConfigError(
            "configuration fails every sufficiency tier (worst stage gap " +
            std::to_string(rep.worst_gap) + " kW > bound " +
            std::to_string(rep.power_bound) +
            " kW); fix the configuration or pass --force-infeasible");
    }

    const ValueTable table =
        solve_backward(scenario, opt.n_states, opt.n_decisions, g.threads);

    ensure_out_dir(opt.out_dir);
    save_value_table(table, join_path(opt.out_dir, "value_table.json"));

    RunManifest manifest;
    manifest.subcommand = "solve";
    manifest.seed = g.seed;
    manifest.created_utc = utc_now_iso8601();
    manifest.input_hashes[opt.config] = hash_file(opt.config);
    manifest.input_hashes[loaded.pv_model_path] = hash_file(loaded.pv_model_path);
    manifest.input_hashes[loaded.load_model_path] = hash_file(loaded.load_model_path);
    manifest.flags["n_states"] = std::to_string(opt.n_states);
    manifest.flags["n_decisions"] = std::to_string(opt.n_decisions);
    manifest.flags["force_infeasible"] = opt.force_infeasible ? "true" : "false";
    write_manifest(manifest, opt.out_dir);

    const double v0 =
        interpolate_value(table.value.front(), table.grid, scenario.initial_soc_kwh);
    std::cout << "solve: " << scenario.grid.n_stages << " stages x " << opt.n_states
              << " states x " << opt.n_decisions << " decisions\n"
              << "  V_0(s0=" << scenario.initial_soc_kwh << " kWh) = " << v0 << " $\n"
              << "  wrote value_table.json to " << opt.out_dir << "\n";
}

void cmd_simulate(const SimulateOptions& opt, const GlobalOptions& g) {
    const LoadedScenario loaded = load_scenario_file(opt.config);
    Scenario scenario = loaded.scenario;
    if (opt.lookahead_h >= 0) scenario.lookahead_h = opt.lookahead_h;

    const SolveSpan span = parse_span(opt.solve_span);
    const PolicyBundle bundle =
        make_policy(opt.policy, scenario, loaded, opt.value_table, span);

    const PolicyStats stats =
        monte_carlo(*bundle.policy, scenario, opt.n_rollouts, g.seed, g.threads);

    CostReport report;
    report.seed = g.seed;
    report.n_rollouts = opt.n_rollouts;
    report.solve_span = bundle.is_optimal ? opt.solve_span : "";
    report.policies.push_back(stats);

    ensure_out_dir(opt.out_dir);
    save_report(report, join_path(opt.out_dir, "report.json"));
    const Trajectory traj =
        rollout(*bundle.policy, scenario, sample_stream(scenario, g.seed, 0));
    write_trajectory_csv(traj, join_path(opt.out_dir, "trajectory.csv"));

    RunManifest manifest;
    manifest.subcommand = "simulate";
    manifest.seed = g.seed;
    manifest.created_utc = utc_now_iso8601();
    manifest.input_hashes[opt.config] = hash_file(opt.config);
    manifest.input_hashes[loaded.pv_model_path] = hash_file(loaded.pv_model_path);
    manifest.input_hashes[loaded.load_model_path] = hash_file(loaded.load_model_path);
    manifest.flags["policy"] = opt.policy;
    manifest.flags["n"] = std::to_string(opt.n_rollouts);
    manifest.flags["solve_span"] = opt.solve_span;
    manifest.flags["lookahead_h"] = std::to_string(scenario.lookahead_h);
    write_manifest(manifest, opt.out_dir);

    std::cout << "simulate: " << opt.n_rollouts << " rollouts, seed " << g.seed << "\n";
    print_stats_line(stats);
    std::cout << "  wrote report.json, trajectory.csv to " << opt.out_dir << "\n";
}

void cmd_compare(const CompareOptions& opt, const GlobalOptions& g) {
    const LoadedScenario loaded = load_scenario_file(opt.config);
    Scenario scenario = loaded.scenario;
    if (opt.lookahead_h >= 0) scenario.lookahead_h = opt.lookahead_h;

    const std::vector<std::string> names = split_list(opt.policies);
    if (names.size() < 2) {
        throw ConfigError("--policies needs at least 2 entries, got '" + opt.policies + "'");
    }
    const SolveSpan span = parse_span(opt.solve_span);

    std::vector<PolicyBundle> bundles;
    std::vector<const Policy*> policies;
    bool any_optimal = false;
    for (const auto& name : names) {
        bundles.push_back(make_policy(name, scenario, loaded, opt.value_table, span));
        policies.push_back(bundles.back().policy.get());
        any_optimal = any_optimal || bundles.back().is_optimal;
    }

    CostReport report = compare_policies(policies, scenario, opt.n_rollouts, g.seed, g.threads);
    report.solve_span = any_optimal ? opt.solve_span : "";

    ensure_out_dir(opt.out_dir);
    save_report(report, join_path(opt.out_dir, "report.json"));
    write_cost_to_go_csv(report, join_path(opt.out_dir, "cost_to_go.csv"));
    {
        std::ofstream out(join_path(opt.out_dir, "summary.csv"));
        if (!out) {
            throw DataError("cannot write summary.csv in " + opt.out_dir);
        }
        out << "policy,mean_j1,std_j1,ci95,mean_j,mean_terminal_soc,n,violations\n";
        for (const auto& s : report.policies) {
            out << s.policy << ',' << format_double(s.mean_j1) << ','
                << format_double(s.std_j1) << ',' << format_double(s.ci95_half) << ','
                << format_double(s.mean_j) << ',' << format_double(s.mean_terminal_soc) << ','
                << s.n << ',' << s.violations << '\n';
        }
    }

    RunManifest manifest;
    manifest.subcommand = "compare";
    manifest.seed = g.seed;
    manifest.created_utc = utc_now_iso8601();
    manifest.input_hashes[opt.config] = hash_file(opt.config);
    manifest.input_hashes[loaded.pv_model_path] = hash_file(loaded.pv_model_path);
    manifest.input_hashes[loaded.load_model_path] = hash_file(loaded.load_model_path);
    manifest.flags["policies"] = opt.policies;
    manifest.flags["n"] = std::to_string(opt.n_rollouts);
    manifest.flags["solve_span"] = opt.solve_span;
    manifest.flags["lookahead_h"] = std::to_string(scenario.lookahead_h);
    write_manifest(manifest, opt.out_dir);

    std::cout << "compare: " << opt.n_rollouts << " common-random-number rollouts, seed "
              << g.seed << "\n";
    for (const auto& s : report.policies) print_stats_line(s);
    std::cout << "  wrote report.json, summary.csv, cost_to_go.csv to " << opt.out_dir << "\n";
}

}  // namespace ngems::cli
