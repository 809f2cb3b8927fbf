// sweeps.hpp — Parameter-scan orchestration: spectrum sweeps over omega_d,
// drive sweeps over Omega_d, diagonal-population extraction, and
// critical-drive tables, with a bounded worker pool.
//
// Rows are independent work items; results are ordered by (n_list, grid)
// index regardless of completion order, and runs are bit-deterministic:
// serial and parallel execution produce identical rows.

#pragma once

#include <optional>
#include <string>

#include "tcsim/analysis.hpp"
#include "tcsim/classical.hpp"
#include "tcsim/observables.hpp"

namespace tcsim {

enum class SweepMode { spectrum, drive, diagonals };
enum class GridSpacing { linear, log };

// Frame used for the per-row steady-state solve. The displaced frame shifts
// the cavity by its coherent amplitude before solving, which keeps the Fock
// basis small at strong drive; observables map back exactly (the displacement
// is unitary). Diagonals require the direct frame. `automatic` picks
// displaced for drive sweeps and direct otherwise.
enum class SolveFrame { automatic, direct, displaced };

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    GridSpacing spacing = GridSpacing::linear;

    void validate() const;
    std::vector<double> values() const;
};

struct TruncationSpec {
    bool automatic = true;   // auto-select n_max; otherwise use fixed_n_max
    int fixed_n_max = 8;
    double tail_tol = 1e-8;
    int hard_cap = 400;      // ceiling for automatic growth in either frame
};

struct SweepSpec {
    SweepMode mode = SweepMode::spectrum;
    SystemParams params;  // the swept field is overwritten per row
    GridSpec grid;
    std::vector<int> n_list = {1};
    TruncationSpec truncation;
    bool include_classical = true;
    SolveFrame frame = SolveFrame::automatic;

    void validate() const;
};

struct RowDiagnostics {
    double residual_inf = 0.0;
    int n_max = 0;
    std::string frame;          // "direct" or "displaced"
    Complex displacement{0.0, 0.0};
    int solver_iterations = 0;  // displaced-frame refinement count
    double wall_ms = 0.0;
};

struct SweepRow {
    int n_emitters = 0;
    double sweep_value = 0.0;  // omega_d (spectrum) or Omega_d (drive/diagonals)
    ObservableSet obs;
    // Classical companions (NaN when not requested).
    double n_c_classical = 0.0;
    double n_ens_classical = 0.0;
    double n_c_uncoupled = 0.0;
    RowDiagnostics diag;
    std::optional<std::string> error;  // row-local failure, sweep still completes
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // n_list-major, grid-minor order
    double wall_ms_total = 0.0;
};

// One steady-state solve per (grid point, N). n_threads = 0 uses the hardware
// concurrency; rows are deterministic either way.
SweepResult run_sweep(const SweepSpec& spec, int n_threads = 1);

// Drive-response series for one emitter count, for the analysis routines.
// Rows with errors are rejected.
DriveSweepSeries to_drive_series(const SweepResult& result, int n_emitters);

// Local log-log slope of the steady-state cavity population at the given
// drive, from a 3-point geometric stencil (ratio step_factor).
double local_slope(const SystemParams& params, int n_emitters, double omega_drive_amp,
                   const TruncationSpec& truncation = {}, SolveFrame frame = SolveFrame::automatic,
                   double step_factor = 1.1);

enum class CriticalScan { gamma_e, g_col };

struct CriticalTableSpec {
    SystemParams params;
    std::vector<int> n_list = {1, 2};
    CriticalScan scan = CriticalScan::gamma_e;
    std::vector<double> scan_values;
    TruncationSpec truncation;
    int onset_grid_count = 40;  // drive grid [Omega_cr/10, 10 Omega_cr] per cell
};

struct CriticalTableRow {
    double scan_value = 0.0;
    int n_emitters = 0;
    double omega_cr = 0.0;                // predicted, Eq.-level closed form
    std::optional<double> onset;          // detected from a fresh drive sweep
    double coop = 0.0;
    double slope_at_half_cr = 0.0;
    double slope_at_twice_cr = 0.0;
    std::optional<std::string> error;
};

// Predicted critical drive, detected onset, and cooperativity for each
// (scan value, N) cell. Per-cell failures are recorded; the table completes.
std::vector<CriticalTableRow> critical_table(const CriticalTableSpec& spec, int n_threads = 1);

const char* to_string(SweepMode mode);
const char* to_string(GridSpacing spacing);
const char* to_string(SolveFrame frame);
const char* to_string(CriticalScan scan);

}  // namespace tcsim
