#pragma once

#include <cstdint>
#include <string>

namespace ngems::cli {

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 1;
};

struct IngestOptions {
    std::string weather_csv;
    std::string load_csv;
    std::string out_dir;
    int n_states = 5;  // model states per hour, paper's N_pv = N_lo
    double pv_capacity_kw = 2.5;
    double pv_derate = 1.0;
};

struct CheckOptions {
    std::string config;
};

struct SolveOptions {
    std::string config;
    std::string out_dir;
    int n_states = 101;
    int n_decisions = 101;
    bool force_infeasible = false;
};

struct SimulateOptions {
    std::string config;
    std::string out_dir;
    std::string policy = "optimal";
    std::size_t n_rollouts = 1;
    std::string value_table;  // overrides the config's value_table when set
    int lookahead_h = -1;     // < 0: keep the config value
    std::string solve_span = "full";
};

struct CompareOptions {
    std::string config;
    std::string out_dir;
    std::string policies = "policy1,policy2,optimal";
    std::size_t n_rollouts = 1000;
    std::string value_table;
    int lookahead_h = -1;
    std::string solve_span = "full";
};

// Each command throws ngems errors on failure; main() maps them to exit
// codes. cmd_check returns the verdict-driven code (0 pass / 2 fail) itself.
void cmd_ingest(const IngestOptions& opt, const GlobalOptions& g);
int cmd_check(const CheckOptions& opt, const GlobalOptions& g);
void cmd_solve(const SolveOptions& opt, const GlobalOptions& g);
void cmd_simulate(const SimulateOptions& opt, const GlobalOptions& g);
void cmd_compare(const CompareOptions& opt, const GlobalOptions& g);

}  // namespace ngems::cli
