// params.hpp — Physical parameter set for the driven, dissipative Tavis-Cummings system
//
// All frequencies and rates are expressed in units of the cavity frequency
// omega_c (so omega_c = 1 by convention) with hbar = 1.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcsim {

struct SystemParams {
    double omega_c = 1.0;          // cavity frequency
    double omega_e = 1.0;          // emitter transition frequency
    double omega_d = 1.0;          // drive frequency
    double gamma_c = 0.03;         // total cavity decay rate
    double gamma_c_rad = 0.03;     // radiative part of the cavity decay
    double gamma_e = 0.0003;       // per-emitter decay rate
    double g_col = 0.03;           // collective cavity-ensemble coupling
    int n_emitters = 1;            // ensemble size N
    double omega_drive_amp = 0.0;  // drive strength Omega_d

    // Single-emitter coupling g = g_col / sqrt(N).
    double g_single() const {
        return g_col / std::sqrt(static_cast<double>(n_emitters));
    }

    double detuning_cavity() const { return omega_c - omega_d; }
    double detuning_emitter() const { return omega_e - omega_d; }

    void validate() const {
        auto require = [](bool ok, const std::string& what) {
            if (!ok) throw std::invalid_argument("SystemParams: " + what);
        };
        require(n_emitters >= 1, "n_emitters must be >= 1");
        require(omega_c > 0.0, "omega_c must be positive");
        require(omega_e > 0.0, "omega_e must be positive");
        require(gamma_c >= 0.0, "gamma_c must be non-negative");
        require(gamma_c_rad >= 0.0, "gamma_c_rad must be non-negative");
        require(gamma_c_rad <= gamma_c + 1e-15, "gamma_c_rad must not exceed gamma_c");
        require(gamma_e >= 0.0, "gamma_e must be non-negative");
        require(g_col >= 0.0, "g_col must be non-negative");
        require(omega_drive_amp >= 0.0, "omega_drive_amp must be non-negative");
    }
};

// Baseline parameter set used for all reference figures: resonant emitters,
// gamma_c = 0.03, gamma_e = 0.0003, g_col = 0.03, fully radiative cavity.
inline SystemParams baseline_params(int n_emitters = 1, double omega_drive_amp = 0.0) {
    SystemParams p;
    p.n_emitters = n_emitters;
    p.omega_drive_amp = omega_drive_amp;
    return p;
}

}  // namespace tcsim
