// Command-line front-end: nanogrid energy management study tool.
// Subcommands: ingest, check, solve, simulate, compare.

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ngems/errors.hpp"
#include "ngems/manifest.hpp"

namespace {

// Exit codes: 0 success, 1 usage/parse, 2 infeasible configuration,
// 3 runtime invariant violation.
int run(int argc, char** argv) {
    CLI::App app{"nanogrid energy management: model fitting, SDP solving, policy evaluation"};
    app.set_version_flag("--version", ngems::kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    ngems::cli::GlobalOptions global;
    app.add_option("--seed", global.seed, "random seed for sampling (default 0)");
    app.add_option("--threads", global.threads, "worker thread cap (default 1)")
        ->check(CLI::PositiveNumber);

    ngems::cli::IngestOptions ingest;
    auto* cmd_ingest = app.add_subcommand("ingest", "fit PV/load models from CSV data");
    cmd_ingest->add_option("--weather", ingest.weather_csv, "weather CSV path")->required();
    cmd_ingest->add_option("--load", ingest.load_csv, "load CSV path")->required();
    cmd_ingest->add_option("--out", ingest.out_dir, "output directory")->required();
    cmd_ingest->add_option("--n-states", ingest.n_states,
                           "distribution states per hour (default 5)");
    cmd_ingest->add_option("--pv-capacity-kw", ingest.pv_capacity_kw,
                           "plant rating at 1000 W/m^2 (default 2.5)");
    cmd_ingest->add_option("--pv-derate", ingest.pv_derate, "plant derate factor (default 1)");

    ngems::cli::CheckOptions check;
    auto* cmd_check = app.add_subcommand("check", "run the sufficiency (feasibility) tiers");
    cmd_check->add_option("--config", check.config, "scenario config JSON")->required();

    ngems::cli::SolveOptions solve;
    auto* cmd_solve = app.add_subcommand("solve", "backward-induction value/decision tables");
    cmd_solve->add_option("--config", solve.config, "scenario config JSON")->required();
    cmd_solve->add_option("--out", solve.out_dir, "output directory")->required();
    cmd_solve->add_option("--n-states", solve.n_states, "state grid size (default 101)");
    cmd_solve->add_option("--n-decisions", solve.n_decisions,
                          "decision candidates per state (default 101)");
    cmd_solve->add_flag("--force-infeasible", solve.force_infeasible,
                        "solve even when every sufficiency tier fails");

    ngems::cli::SimulateOptions simulate;
    auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo rollout of one policy");
    cmd_simulate->add_option("--config", simulate.config, "scenario config JSON")->required();
    cmd_simulate->add_option("--out", simulate.out_dir, "output directory")->required();
    cmd_simulate->add_option("--policy", simulate.policy,
                             "policy1 | policy2 | optimal (default optimal)");
    cmd_simulate->add_option("--n", simulate.n_rollouts, "rollout count (default 1)");
    cmd_simulate->add_option("--table", simulate.value_table,
                             "value table path (overrides config)");
    cmd_simulate->add_option("--lookahead-h", simulate.lookahead_h,
                             "policy2 lookahead hours (default: config value or 3)");
    cmd_simulate->add_option("--solve-span", simulate.solve_span,
                             "day | full: how the value table spans the horizon (default full)");

    ngems::cli::CompareOptions compare;
    auto* cmd_compare = app.add_subcommand("compare", "evaluate policies under common random numbers");
    cmd_compare->add_option("--config", compare.config, "scenario config JSON")->required();
    cmd_compare->add_option("--out", compare.out_dir, "output directory")->required();
    cmd_compare->add_option("--policies", compare.policies,
                            "comma list of policy1|policy2|optimal (default all three)");
    cmd_compare->add_option("--n", compare.n_rollouts, "rollouts per policy (default 1000)");
    cmd_compare->add_option("--table", compare.value_table,
                            "value table path (overrides config)");
    cmd_compare->add_option("--lookahead-h", compare.lookahead_h,
                            "policy2 lookahead hours (default: config value or 3)");
    cmd_compare->add_option("--solve-span", compare.solve_span,
                            "day | full (default full)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit 0; any parse failure is usage error
    }

    try {
        if (cmd_ingest->parsed()) {
            ngems::cli::cmd_ingest(ingest, global);
        } else if (cmd_check->parsed()) {
            return ngems::cli::cmd_check(check, global);
        } else if (cmd_solve->parsed()) {
            ngems::cli::cmd_solve(solve, global);
        } else if (cmd_simulate->parsed()) {
            ngems::cli::cmd_simulate(simulate, global);
        } else if (cmd_compare->parsed()) {
            ngems::cli::cmd_compare(compare, global);
        }
        return 0;
    } catch (const ngems::InfeasibleConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ngems::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const ngems::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ngems::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
