// analysis.hpp — Critical-drive prediction, cooperativity, Poisson/coherent
// state comparisons, log-log slope extraction, onset detection, and emitter
// counting. Pure functions over immutable inputs.

#pragma once

#include <optional>
#include <vector>

#include "tcsim/params.hpp"

namespace tcsim {

struct DriveSweepPoint {
    double omega_drive_amp = 0.0;
    double cavity_pop = 0.0;
    double ensemble_pop = 0.0;
    std::vector<double> diagonals;  // rho_{n,G}, optional
};

// Ordered drive-response series (Omega_d strictly increasing).
struct DriveSweepSeries {
    std::vector<DriveSweepPoint> points;
    SystemParams params;  // drive field unset

    void validate() const;
};

struct CoherentAmplitudes {
    double alpha_c_sq = 0.0;    // coupled cavity, Omega_eff^2 / gamma_c^2
    double alpha_c0_sq = 0.0;   // uncoupled cavity, Omega_d^2 / gamma_c^2
    double alpha_ens_sq = 0.0;  // ensemble, (Omega_d / (1 + gamma_c gamma_e / 4 g_col^2))^2 T^2
};

struct SlopePoint {
    double omega_drive_amp = 0.0;
    double slope = 0.0;
};

enum class PoissonMode { exact, approximate };

// C = 4 g_col^2 / (gamma_c gamma_e).
double cooperativity(const SystemParams& params);

// Critical drive strength marking the onset of the (N+1)-photon regime:
// Omega_cr(N) = (N! gamma_e^2 g_col^(2(N-1))
//                / (16 (1 + gamma_c gamma_e / (4 g_col^2))^2))^(1/(2N)).
double critical_drive(const SystemParams& params, int n);

// P_alpha(n): exact mode e^(-|alpha|^2) |alpha|^(2n) / n!; approximate mode
// drops the exponential (the small-|alpha|^2 form used in the critical-drive
// derivation).
double poisson_weight(double alpha_sq, int n, PoissonMode mode);

// Coherent-state amplitudes of the coupled, uncoupled, and ensemble modes,
// with the interaction timescale T = 1/g_col.
CoherentAmplitudes coherent_amplitudes(const SystemParams& params);

// Central finite differences of log(cavity_pop) with respect to
// log(Omega_d) at the interior points of the series.
std::vector<SlopePoint> loglog_slopes(const DriveSweepSeries& series);

// Smallest Omega_d at which the local slope reaches 2 + threshold, linearly
// interpolated between grid points; nullopt if the sweep never leaves the
// linear regime.
std::optional<double> detect_onset(const DriveSweepSeries& series, double threshold = 0.3);

// N estimate from the slope plateau: round(max interior slope / 2 - 1),
// clamped to >= 1; nullopt ("undetermined") if no slope exceeds 2.5.
std::optional<int> infer_emitter_count(const DriveSweepSeries& series);

}  // namespace tcsim
