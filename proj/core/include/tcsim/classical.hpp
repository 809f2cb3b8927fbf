// classical.hpp — Coupled-oscillator analogue of the driven cavity-emitter
// system: N+1 damped masses on springs with unit masses, the cavity oscillator
// driven at omega_d. Provides the closed-form drive response, the
// effective-drive and suppression quantities, the quantum-to-classical
// parameter mapping, and an RK4 time-domain oracle.
//
// hbar = 1 throughout; the sqrt(2 hbar omega_c) drive factors become
// sqrt(2 omega_c), and all populations come out hbar-free.

#pragma once

#include <complex>

#include "tcsim/errors.hpp"
#include "tcsim/params.hpp"

namespace tcsim {

struct ClassicalAmplitudes {
    std::complex<double> c0;  // cavity oscillator amplitude
    std::complex<double> ci;  // per-emitter oscillator amplitude (equal for all i)
};

struct ClassicalPopulations {
    double n_c = 0.0;    // omega_c |C_0|^2 / 2
    double n_ens = 0.0;  // N omega_e |C_i|^2 / 2
};

// Mass-spring parameters equivalent to the quantum model (unit masses):
// k = -2 g sqrt(omega_c omega_e), omega0^2 = omega_c^2 - k,
// omegai^2 = omega_e^2 - k, classical drive amplitude Omega_d sqrt(2 omega_c).
struct ClassicalMap {
    double k = 0.0;
    double omega0_sq = 0.0;
    double omegai_sq = 0.0;
    double drive_cl = 0.0;
};

// Steady drive-response amplitudes
//   C_0 = Omega_d sqrt(2 omega_c) (omega_e^2 - omega_d^2 + i omega_d gamma_e) / D,
//   C_i = -2 g sqrt(omega_c omega_e) Omega_d sqrt(2 omega_c) / D,
//   D   = (omega_c^2 - omega_d^2 + i omega_d gamma_c)
//         (omega_e^2 - omega_d^2 + i omega_d gamma_e) - 4 N g^2 omega_c omega_e.
// Throws SolveError when D vanishes (lossless resonant pole).
ClassicalAmplitudes co_amplitudes(const SystemParams& params, double omega_d);

// Classical analogues of the cavity and total ensemble populations.
ClassicalPopulations co_populations(const SystemParams& params, double omega_d);

// Residual effective drive on the cavity after destructive interference with
// the ensemble: Omega_eff = (1 - 1/(1 + gamma_c gamma_e / (4 g_col^2))) Omega_d.
// Algebraically equal to Omega_d / (C + 1).
double effective_drive(const SystemParams& params);

// Resonant weak-drive cavity population
//   Omega_d^2 gamma_e^2 / (16 g_col^4) / (1 + gamma_c gamma_e / (4 g_col^2))^2,
// identically Omega_eff^2 / gamma_c^2. Requires g_col > 0.
double weak_resonant_population(const SystemParams& params);

// Resonantly driven uncoupled cavity: Omega_d^2 / gamma_c^2. Requires gamma_c > 0.
double uncoupled_population(const SystemParams& params);

// First-principles on-resonance suppression of the coupled cavity population,
// weak_resonant_population / uncoupled_population; algebraically 1/(C+1)^2.
double suppression_ratio(const SystemParams& params);

// Amplitude suppression Omega_eff / Omega_d = 1/(C+1), exposed separately so
// both powers of (C+1) can be plotted side by side.
double drive_suppression_factor(const SystemParams& params);

ClassicalMap quantum_to_classical_map(const SystemParams& params);

struct OdeOracleOptions {
    int steps_per_period = 720;
    double drift_tol = 1e-6;  // relative amplitude drift between final periods
};

// RK4 integration of the coupled equations of motion from rest; the steady
// oscillation amplitude and phase are extracted by quadrature projection onto
// cos(omega_d t) and sin(omega_d t) over the final drive period. t_end must be
// long enough for transients to die; the run fails if the amplitude still
// drifts between the last two periods.
ClassicalAmplitudes classical_ode_oracle(const SystemParams& params, double omega_d,
                                         double t_end, const OdeOracleOptions& opts = {});

}  // namespace tcsim
