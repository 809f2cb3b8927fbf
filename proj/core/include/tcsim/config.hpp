// config.hpp — Run configuration: a strict JSON document mapped onto sweep
// specifications plus output paths. Unknown keys are rejected; missing keys
// fall back to the baseline parameter set (resonant emitters, gamma_c = 0.03,
// gamma_e = 0.0003, g_col = 0.03, Omega_d = 0.25 g_col).

#pragma once

#include <string>

#include "tcsim/sweeps.hpp"

namespace tcsim {

// Raised on malformed documents, unknown keys, or invalid values.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RunMode { spectrum, drive, diagonals, critical_table, classical_only };

// Axis for the analytic-only classical mode.
enum class ClassicalAxis { omega_d, drive };

struct RunConfig {
    RunMode mode = RunMode::spectrum;
    SystemParams params;               // baseline defaults
    bool grid_set = false;             // grid explicitly given (else mode default)
    GridSpec grid;
    std::vector<int> n_list = {1};
    TruncationSpec truncation;
    bool include_classical = true;
    SolveFrame frame = SolveFrame::automatic;
    CriticalScan scan = CriticalScan::gamma_e;
    std::vector<double> scan_values;   // critical-table mode
    ClassicalAxis classical_axis = ClassicalAxis::omega_d;
    std::string out = "tcsim_out";     // output base path (.csv / .json appended)
    int threads = 0;                   // 0 = hardware concurrency

    // Grid actually used: the explicit one, or the mode default
    // (spectrum: omega_d in [omega_c - 2 g_col, omega_c + 2 g_col], 121 linear
    // points; drive-type: 60 log points over Omega_d/g_col in [1e-3, 10]).
    GridSpec effective_grid() const;

    SweepSpec to_sweep_spec() const;
    CriticalTableSpec to_critical_spec() const;
};

// Parses and validates a JSON configuration document. An empty or "{}"
// document yields the full defaults.
RunConfig parse_config(const std::string& text);

// Serializes a RunConfig to a JSON document that re-parses to an equal config.
std::string serialize_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

const char* to_string(RunMode mode);
const char* to_string(ClassicalAxis axis);

}  // namespace tcsim
