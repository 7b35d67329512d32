#pragma once

#include <string>

#include "clab/config.hpp"

namespace clab {

// Exit-code contract: 0 pass, 1 error or violated verdict, 2 hypothesis-flagged run.

struct RunOutcome {
    int exit_code = 0;
    std::string report;      // JSON
    std::string curve;       // CSV (scan only)
    std::string rho_csv;     // CSV of (theta, rho_bar) when requested
};

RunOutcome run_power(const RunConfig& cfg);
RunOutcome run_verify(const RunConfig& cfg);
RunOutcome run_scan(const RunConfig& cfg, const std::string& mode);
RunOutcome run_oracle(const RunConfig& cfg);

/** Runs every *.json config under config_dir (sorted by name) and aggregates. */
RunOutcome run_suite(const std::string& config_dir);

/** Wrappers that also write the configured output files; return the exit code. */
int cmd_power(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg, const std::string& mode);
int cmd_oracle(const RunConfig& cfg);
int cmd_suite(const std::string& config_dir, const std::string& out_path);

} // namespace clab
