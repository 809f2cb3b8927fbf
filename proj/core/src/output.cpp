#include "tcsim/output.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "tcsim/version.hpp"

namespace tcsim {

using json = nlohmann::json;

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF line endings
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

void finish_or_throw(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_csv_line(std::ofstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ',';
        out << cells[i];
    }
    out << '\n';
}

json diagnostics_json(const SweepRow& row) {
    json d = {{"n_max", row.diag.n_max},
              {"residual_inf", row.diag.residual_inf},
              {"frame", row.diag.frame},
              {"wall_ms", row.diag.wall_ms}};
    if (row.diag.frame == "displaced") {
        d["displacement_re"] = row.diag.displacement.real();
        d["displacement_im"] = row.diag.displacement.imag();
        d["solver_iterations"] = row.diag.solver_iterations;
    }
    if (row.error) d["error"] = *row.error;
    return d;
}

void write_sidecar(const std::string& path, json body) {
    body["library"] = "tcsim";
    body["version"] = TCSIM_VERSION;
    std::ofstream out = open_or_throw(path);
    out << body.dump(2) << '\n';
    finish_or_throw(out, path);
}

}  // namespace

OutputPaths output_paths(const std::string& base) {
    return OutputPaths{base + ".csv", base + ".json"};
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void emit_results(const SweepResult& result, const OutputPaths& paths) {
    const bool diagonals = result.spec.mode == SweepMode::diagonals;
    const char* sweep_var =
        result.spec.mode == SweepMode::spectrum ? "omega_d" : "omega_drive_amp";

    std::size_t n_diag = 0;
    if (diagonals) {
        for (const auto& row : result.rows) n_diag = std::max(n_diag, row.obs.diagonals.size());
    }

    std::vector<std::string> header = {sweep_var,       "n_emitters",   "cavity_pop",
                                       "ensemble_pop",  "scattering"};
    if (result.spec.include_classical) {
        header.insert(header.end(), {"n_c_classical", "n_ens_classical", "n_c_uncoupled"});
    }
    if (diagonals) {
        for (std::size_t n = 0; n < n_diag; ++n) {
            header.push_back("rho_" + std::to_string(n) + "G");
        }
    }

    std::ofstream csv = open_or_throw(paths.csv);
    write_csv_line(csv, header);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : result.rows) {
        std::vector<std::string> cells = {
            format_double(row.sweep_value),
            std::to_string(row.n_emitters),
            format_double(row.error ? nan : row.obs.cavity_pop),
            format_double(row.error ? nan : row.obs.ensemble_pop),
            format_double(row.error ? nan : row.obs.scattering),
        };
        if (result.spec.include_classical) {
            cells.push_back(format_double(row.n_c_classical));
            cells.push_back(format_double(row.n_ens_classical));
            cells.push_back(format_double(row.n_c_uncoupled));
        }
        if (diagonals) {
            for (std::size_t n = 0; n < n_diag; ++n) {
                cells.push_back(format_double(
                    !row.error && n < row.obs.diagonals.size() ? row.obs.diagonals[n] : nan));
            }
        }
        write_csv_line(csv, cells);
    }
    finish_or_throw(csv, paths.csv);

    json meta;
    meta["spec"] = {{"mode", to_string(result.spec.mode)},
                    {"grid",
                     {{"start", result.spec.grid.start},
                      {"stop", result.spec.grid.stop},
                      {"count", result.spec.grid.count},
                      {"spacing", to_string(result.spec.grid.spacing)}}},
                    {"n_list", result.spec.n_list},
                    {"frame", to_string(result.spec.frame)},
                    {"include_classical", result.spec.include_classical},
                    {"params",
                     {{"omega_c", result.spec.params.omega_c},
                      {"omega_e", result.spec.params.omega_e},
                      {"omega_d", result.spec.params.omega_d},
                      {"gamma_c", result.spec.params.gamma_c},
                      {"gamma_c_rad", result.spec.params.gamma_c_rad},
                      {"gamma_e", result.spec.params.gamma_e},
                      {"g_col", result.spec.params.g_col},
                      {"omega_drive_amp", result.spec.params.omega_drive_amp}}}};
    meta["wall_ms_total"] = result.wall_ms_total;
    json rows = json::array();
    for (const auto& row : result.rows) rows.push_back(diagnostics_json(row));
    meta["row_diagnostics"] = rows;
    write_sidecar(paths.json, std::move(meta));
}

void emit_critical_table(const std::vector<CriticalTableRow>& rows, const CriticalTableSpec& spec,
                         const OutputPaths& paths) {
    std::ofstream csv = open_or_throw(paths.csv);
    write_csv_line(csv, {to_string(spec.scan), "n_emitters", "omega_cr_predicted",
                         "onset_detected", "cooperativity", "slope_at_half_cr",
                         "slope_at_twice_cr"});
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : rows) {
        write_csv_line(csv, {
                                format_double(row.scan_value),
                                std::to_string(row.n_emitters),
                                format_double(row.error ? nan : row.omega_cr),
                                format_double(row.onset ? *row.onset : nan),
                                format_double(row.error ? nan : row.coop),
                                format_double(row.error ? nan : row.slope_at_half_cr),
                                format_double(row.error ? nan : row.slope_at_twice_cr),
                            });
    }
    finish_or_throw(csv, paths.csv);

    json meta;
    meta["spec"] = {{"mode", "critical-table"},
                    {"scan", to_string(spec.scan)},
                    {"scan_values", spec.scan_values},
                    {"n_list", spec.n_list}};
    json errors = json::array();
    for (const auto& row : rows) {
        errors.push_back(row.error ? json(*row.error) : json(nullptr));
    }
    meta["row_errors"] = errors;
    write_sidecar(paths.json, std::move(meta));
}

void emit_classical(const RunConfig& config, const OutputPaths& paths) {
    const GridSpec grid = config.effective_grid();
    const bool drive_axis = config.classical_axis == ClassicalAxis::drive;

    std::ofstream csv = open_or_throw(paths.csv);
    write_csv_line(csv, {drive_axis ? "omega_drive_amp" : "omega_d", "n_emitters",
                         "n_c_classical", "n_ens_classical", "n_c_uncoupled", "omega_eff"});
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n : config.n_list) {
        for (double value : grid.values()) {
            SystemParams p = config.params;
            p.n_emitters = n;
            if (drive_axis) {
                p.omega_drive_amp = value;
            } else {
                p.omega_d = value;
            }
            double n_c = nan, n_ens = nan, n_c0 = nan, omega_eff = nan;
            try {
                const ClassicalPopulations pops = co_populations(p, p.omega_d);
                n_c = pops.n_c;
                n_ens = pops.n_ens;
                SystemParams uncoupled = p;
                uncoupled.g_col = 0.0;
                n_c0 = co_populations(uncoupled, p.omega_d).n_c;
                omega_eff = effective_drive(p);
            } catch (const std::exception&) {
                // leave NaNs for pole rows
            }
            write_csv_line(csv, {format_double(value), std::to_string(n), format_double(n_c),
                                 format_double(n_ens), format_double(n_c0),
                                 format_double(omega_eff)});
        }
    }
    finish_or_throw(csv, paths.csv);

    json meta;
    meta["spec"] = {{"mode", "classical"},
                    {"axis", to_string(config.classical_axis)},
                    {"n_list", config.n_list}};
    write_sidecar(paths.json, std::move(meta));
}

}  // namespace tcsim
