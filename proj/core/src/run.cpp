#include "tcsim/run.hpp"

#include <iostream>

namespace tcsim {

int run_config(const RunConfig& config) {
    const OutputPaths paths = output_paths(config.out);
    bool any_row_failed = false;

    switch (config.mode) {
        case RunMode::spectrum:
        case RunMode::drive:
        case RunMode::diagonals: {
            const SweepResult result = run_sweep(config.to_sweep_spec(), config.threads);
            for (const auto& row : result.rows) any_row_failed |= row.error.has_value();
            emit_results(result, paths);
            break;
        }
        case RunMode::critical_table: {
            const CriticalTableSpec spec = config.to_critical_spec();
            const std::vector<CriticalTableRow> rows = critical_table(spec, config.threads);
            for (const auto& row : rows) any_row_failed |= row.error.has_value();
            emit_critical_table(rows, spec, paths);
            break;
        }
        case RunMode::classical_only: {
            emit_classical(config, paths);
            break;
        }
    }
    return any_row_failed ? exit_solve_error : exit_ok;
}

int run_config_text(const std::string& text) {
    try {
        return run_config(parse_config(text));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io_error;
    } catch (const SolveError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solve_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solve_error;
    }
}

}  // namespace tcsim
