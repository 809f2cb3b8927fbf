// run.hpp — Dispatch of a parsed RunConfig to the solvers and writers, with
// the process exit codes used by the command-line tool.

#pragma once

#include "tcsim/config.hpp"
#include "tcsim/output.hpp"

namespace tcsim {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_solve_error = 3,
    exit_io_error = 4,
};

// Runs the configured job and writes outputs. Returns exit_ok on full
// success; exit_solve_error when any row failed (partial results are still
// written and flagged in the sidecar). Throws ConfigError / IoError for the
// caller to map onto the remaining codes.
int run_config(const RunConfig& config);

// Parses, runs, and maps all failures onto exit codes, logging to stderr.
int run_config_text(const std::string& text);

}  // namespace tcsim
