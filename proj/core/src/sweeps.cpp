#include "tcsim/sweeps.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace tcsim {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, count) on up to n_threads workers. Exceptions are
// the caller's job: fn must not throw.
void parallel_for(int count, int n_threads, const std::function<void(int)>& fn) {
    if (n_threads <= 0) {
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    }
    n_threads = std::min(n_threads, count);
    if (n_threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

struct DisplacedSolution {
    SteadySolution sol;
    HilbertSpace space;
    Complex beta{0.0, 0.0};
    int iterations = 0;
};

// Steady state in the cavity frame displaced by beta, with beta refined
// towards the true mean field (one exact step: <a>_displaced = <a> - beta)
// and the Fock truncation grown until the displaced tail is converged.
DisplacedSolution solve_displaced(const SystemParams& params, const TruncationSpec& trunc) {
    Complex beta = params.gamma_c > 0.0 || params.detuning_cavity() != 0.0
                       ? cavity_displacement(params)
                       : Complex(0.0, 0.0);
    int n_max = trunc.automatic ? 8 : trunc.fixed_n_max;
    int beta_updates = 0;

    for (int attempt = 0; attempt < 40; ++attempt) {
        const HilbertSpace space(params.n_emitters, n_max);
        SteadySolution sol = steady_state_full(liouvillian_displaced(params, space, beta));

        if (trunc.automatic && fock_tail_population(sol.rho, space) >= trunc.tail_tol) {
            n_max += 4;
            if (n_max > trunc.hard_cap) {
                throw SolveError("solve_displaced: required n_max exceeds hard cap " +
                                 std::to_string(trunc.hard_cap));
            }
            continue;
        }

        const Complex a_mean = expectation(cavity_annihilation(space), sol.rho);
        if (beta_updates < 6 && std::abs(a_mean) > 0.02 * (1.0 + std::abs(beta))) {
            beta += a_mean;
            ++beta_updates;
            continue;
        }
        return DisplacedSolution{std::move(sol), space, beta, beta_updates};
    }
    throw SolveError("solve_displaced: refinement did not converge");
}

ObservableSet displaced_observables(const SystemParams& params, const DisplacedSolution& d) {
    ObservableSet out;
    const Complex a_mean = expectation(cavity_annihilation(d.space), d.sol.rho);
    const double n_fluct = expectation(number_op(d.space), d.sol.rho).real();
    out.cavity_pop = n_fluct + 2.0 * (std::conj(d.beta) * a_mean).real() + std::norm(d.beta);
    for (int i = 1; i <= d.space.n_emitters; ++i) {
        out.ensemble_pop += expectation(excitation_projector(i, d.space), d.sol.rho).real();
    }
    out.scattering = params.gamma_c_rad * out.cavity_pop;
    // rho_{n,G} is not diagonal in the displaced frame; no diagonals here.
    return out;
}

SolveFrame resolve_frame(const SweepSpec& spec) {
    if (spec.frame != SolveFrame::automatic) return spec.frame;
    return spec.mode == SweepMode::drive ? SolveFrame::displaced : SolveFrame::direct;
}

// omega_d grid point with the largest classical cavity response; used to pick
// the truncation probe for spectrum sweeps.
double spectrum_probe_frequency(const SystemParams& params, const std::vector<double>& grid) {
    double best = params.omega_c;
    double best_pop = -1.0;
    for (double w : grid) {
        double pop;
        try {
            pop = co_populations(params, w).n_c;
        } catch (const SolveError&) {
            continue;
        }
        if (pop > best_pop) {
            best_pop = pop;
            best = w;
        }
    }
    return best;
}

struct RowTask {
    int n_emitters = 0;
    double value = 0.0;
    int row_index = 0;
};

}  // namespace

void GridSpec::validate() const {
    if (count < 2) throw std::invalid_argument("GridSpec: count must be >= 2");
    if (spacing == GridSpacing::log && !(start > 0.0 && stop > 0.0)) {
        throw std::invalid_argument("GridSpec: log spacing requires positive endpoints");
    }
    if (!(stop > start)) throw std::invalid_argument("GridSpec: stop must exceed start");
}

std::vector<double> GridSpec::values() const {
    validate();
    std::vector<double> out(count);
    if (spacing == GridSpacing::linear) {
        const double step = (stop - start) / (count - 1);
        for (int i = 0; i < count; ++i) out[i] = start + i * step;
    } else {
        const double log_start = std::log(start);
        const double step = (std::log(stop) - log_start) / (count - 1);
        for (int i = 0; i < count; ++i) out[i] = std::exp(log_start + i * step);
    }
    out.back() = stop;
    return out;
}

void SweepSpec::validate() const {
    params.validate();
    grid.validate();
    if (n_list.empty()) throw std::invalid_argument("SweepSpec: n_list must be non-empty");
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("SweepSpec: emitter counts must be >= 1");
    }
    if (mode == SweepMode::diagonals && frame == SolveFrame::displaced) {
        throw std::invalid_argument(
            "SweepSpec: diagonals require the direct frame (rho_{n,G} is frame-dependent)");
    }
    if (!(truncation.tail_tol > 0.0 && truncation.tail_tol < 1.0)) {
        throw std::invalid_argument("SweepSpec: tail_tol must lie in (0, 1)");
    }
}

SweepResult run_sweep(const SweepSpec& spec, int n_threads) {
    spec.validate();
    const auto t_start = Clock::now();
    const std::vector<double> grid = spec.grid.values();
    const SolveFrame frame = resolve_frame(spec);

    SweepResult result;
    result.spec = spec;
    result.rows.resize(spec.n_list.size() * grid.size());

    std::vector<RowTask> tasks;
    tasks.reserve(result.rows.size());

    // Per-N setup: fix the shared Fock truncation for direct-frame rows
    // (probe at the largest drive, or at the classical spectral peak).
    for (std::size_t ni = 0; ni < spec.n_list.size(); ++ni) {
        const int n_emitters = spec.n_list[ni];
        std::optional<int> shared_n_max;
        std::optional<std::string> setup_error;

        if (frame == SolveFrame::direct) {
            if (spec.truncation.automatic) {
                SystemParams probe = spec.params;
                probe.n_emitters = n_emitters;
                if (spec.mode == SweepMode::spectrum) {
                    probe.omega_d = spectrum_probe_frequency(probe, grid);
                } else {
                    probe.omega_drive_amp = grid.back();
                }
                try {
                    shared_n_max = auto_truncate(
                        probe, spec.truncation.tail_tol,
                        TruncationOptions{4, 4, spec.truncation.hard_cap});
                } catch (const std::exception& e) {
                    setup_error = std::string("truncation probe failed: ") + e.what();
                }
            } else {
                shared_n_max = spec.truncation.fixed_n_max;
            }
        }

        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            const int row_index = static_cast<int>(ni * grid.size() + gi);
            SweepRow& row = result.rows[row_index];
            row.n_emitters = n_emitters;
            row.sweep_value = grid[gi];
            row.diag.frame = frame == SolveFrame::direct ? "direct" : "displaced";
            if (shared_n_max) row.diag.n_max = *shared_n_max;
            if (setup_error) {
                row.error = setup_error;
            } else {
                tasks.push_back(RowTask{n_emitters, grid[gi], row_index});
            }
        }
    }

    auto solve_row = [&](int task_index) {
        const RowTask& task = tasks[task_index];
        SweepRow& row = result.rows[task.row_index];
        const auto row_start = Clock::now();

        SystemParams p = spec.params;
        p.n_emitters = task.n_emitters;
        if (spec.mode == SweepMode::spectrum) {
            p.omega_d = task.value;
        } else {
            p.omega_drive_amp = task.value;
        }

        try {
            if (frame == SolveFrame::direct) {
                const HilbertSpace space(p.n_emitters, row.diag.n_max);
                SteadySolution sol = steady_state_full(liouvillian(p, space));
                row.obs = observable_set(p, space, sol.rho);
                row.diag.residual_inf = sol.residual_inf;
            } else {
                DisplacedSolution d = solve_displaced(p, spec.truncation);
                row.obs = displaced_observables(p, d);
                row.diag.residual_inf = d.sol.residual_inf;
                row.diag.n_max = d.space.n_max;
                row.diag.displacement = d.beta;
                row.diag.solver_iterations = d.iterations;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }

        if (spec.include_classical) {
            try {
                const ClassicalPopulations cl = co_populations(p, p.omega_d);
                row.n_c_classical = cl.n_c;
                row.n_ens_classical = cl.n_ens;
                SystemParams uncoupled = p;
                uncoupled.g_col = 0.0;
                row.n_c_uncoupled = co_populations(uncoupled, p.omega_d).n_c;
            } catch (const std::exception&) {
                row.n_c_classical = row.n_ens_classical = row.n_c_uncoupled =
                    std::numeric_limits<double>::quiet_NaN();
            }
        } else {
            row.n_c_classical = row.n_ens_classical = row.n_c_uncoupled =
                std::numeric_limits<double>::quiet_NaN();
        }
        row.diag.wall_ms = elapsed_ms(row_start);
    };

    parallel_for(static_cast<int>(tasks.size()), n_threads, solve_row);
    result.wall_ms_total = elapsed_ms(t_start);
    return result;
}

DriveSweepSeries to_drive_series(const SweepResult& result, int n_emitters) {
    if (result.spec.mode == SweepMode::spectrum) {
        throw std::invalid_argument("to_drive_series: result is a spectrum sweep");
    }
    DriveSweepSeries series;
    series.params = result.spec.params;
    series.params.n_emitters = n_emitters;
    series.params.omega_drive_amp = 0.0;
    for (const auto& row : result.rows) {
        if (row.n_emitters != n_emitters) continue;
        if (row.error) {
            throw SolveError("to_drive_series: row at Omega_d = " +
                             std::to_string(row.sweep_value) + " failed: " + *row.error);
        }
        series.points.push_back(DriveSweepPoint{row.sweep_value, row.obs.cavity_pop,
                                                row.obs.ensemble_pop, row.obs.diagonals});
    }
    if (series.points.empty()) {
        throw std::invalid_argument("to_drive_series: no rows for requested emitter count");
    }
    series.validate();
    return series;
}

double local_slope(const SystemParams& params, int n_emitters, double omega_drive_amp,
                   const TruncationSpec& truncation, SolveFrame frame, double step_factor) {
    if (!(omega_drive_amp > 0.0) || !(step_factor > 1.0)) {
        throw std::invalid_argument("local_slope: need positive drive and step_factor > 1");
    }
    SweepSpec spec;
    spec.mode = SweepMode::drive;
    spec.params = params;
    spec.params.n_emitters = n_emitters;
    spec.grid = GridSpec{omega_drive_amp / step_factor, omega_drive_amp * step_factor, 3,
                         GridSpacing::log};
    spec.n_list = {n_emitters};
    spec.truncation = truncation;
    spec.include_classical = false;
    spec.frame = frame;
    const SweepResult result = run_sweep(spec, 1);
    const std::vector<SlopePoint> slopes = loglog_slopes(to_drive_series(result, n_emitters));
    return slopes.front().slope;
}

std::vector<CriticalTableRow> critical_table(const CriticalTableSpec& spec, int n_threads) {
    spec.params.validate();
    if (spec.scan_values.empty()) {
        throw std::invalid_argument("critical_table: scan_values must be non-empty");
    }
    for (double v : spec.scan_values) {
        if (!(v > 0.0)) throw std::invalid_argument("critical_table: scan values must be positive");
    }

    std::vector<CriticalTableRow> rows(spec.scan_values.size() * spec.n_list.size());
    auto fill_cell = [&](int index) {
        const std::size_t si = index / spec.n_list.size();
        const std::size_t ni = index % spec.n_list.size();
        CriticalTableRow& row = rows[index];
        row.scan_value = spec.scan_values[si];
        row.n_emitters = spec.n_list[ni];

        SystemParams p = spec.params;
        p.n_emitters = row.n_emitters;
        if (spec.scan == CriticalScan::gamma_e) {
            p.gamma_e = row.scan_value;
        } else {
            p.g_col = row.scan_value;
        }
        try {
            row.omega_cr = critical_drive(p, row.n_emitters);
            row.coop = cooperativity(p);
            row.slope_at_half_cr =
                local_slope(p, row.n_emitters, row.omega_cr / 2.0, spec.truncation);
            row.slope_at_twice_cr =
                local_slope(p, row.n_emitters, 2.0 * row.omega_cr, spec.truncation);

            SweepSpec sweep;
            sweep.mode = SweepMode::drive;
            sweep.params = p;
            sweep.grid = GridSpec{row.omega_cr / 10.0, row.omega_cr * 10.0,
                                  spec.onset_grid_count, GridSpacing::log};
            sweep.n_list = {row.n_emitters};
            sweep.truncation = spec.truncation;
            sweep.include_classical = false;
            const SweepResult result = run_sweep(sweep, 1);
            row.onset = detect_onset(to_drive_series(result, row.n_emitters));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };
    parallel_for(static_cast<int>(rows.size()), n_threads, fill_cell);
    return rows;
}

const char* to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::spectrum: return "spectrum";
        case SweepMode::drive: return "drive";
        case SweepMode::diagonals: return "diagonals";
    }
    return "unknown";
}

const char* to_string(GridSpacing spacing) {
    return spacing == GridSpacing::linear ? "linear" : "log";
}

const char* to_string(SolveFrame frame) {
    switch (frame) {
        case SolveFrame::automatic: return "automatic";
        case SolveFrame::direct: return "direct";
        case SolveFrame::displaced: return "displaced";
    }
    return "unknown";
}

const char* to_string(CriticalScan scan) {
    return scan == CriticalScan::gamma_e ? "gamma_e" : "g_col";
}

}  // namespace tcsim
