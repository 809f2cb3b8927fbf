// output.hpp — CSV data files plus JSON metadata sidecars for sweep and
// critical-table results. CSV format: header row naming every column (sweep
// variable first), one data row per result row, 17 significant digits, dot
// decimal separator, comma delimiter, LF line endings.

#pragma once

#include <string>

#include "tcsim/config.hpp"
#include "tcsim/errors.hpp"

namespace tcsim {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OutputPaths {
    std::string csv;
    std::string json;
};

// base -> {base.csv, base.json}
OutputPaths output_paths(const std::string& base);

// Full-precision representation (17 significant digits, round-trips a double).
std::string format_double(double value);

void emit_results(const SweepResult& result, const OutputPaths& paths);
void emit_critical_table(const std::vector<CriticalTableRow>& rows, const CriticalTableSpec& spec,
                         const OutputPaths& paths);

// Analytic-only classical curves over the grid.
void emit_classical(const RunConfig& config, const OutputPaths& paths);

}  // namespace tcsim
