#include "tcsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcsim {

void DriveSweepSeries::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && !(points[i].omega_drive_amp > points[i - 1].omega_drive_amp)) {
            throw std::invalid_argument("DriveSweepSeries: Omega_d must be strictly increasing");
        }
        if (points[i].cavity_pop < -1e-10 || points[i].ensemble_pop < -1e-10) {
            throw std::invalid_argument("DriveSweepSeries: negative population");
        }
    }
}

double cooperativity(const SystemParams& params) {
    params.validate();
    const double denom = params.gamma_c * params.gamma_e;
    if (denom == 0.0) {
        throw std::domain_error("cooperativity: gamma_c and gamma_e must be positive");
    }
    return 4.0 * params.g_col * params.g_col / denom;
}

double critical_drive(const SystemParams& params, int n) {
    params.validate();
    if (n < 1) throw std::invalid_argument("critical_drive: n must be >= 1");
    if (params.g_col <= 0.0 || params.gamma_e <= 0.0) {
        throw std::domain_error("critical_drive: g_col and gamma_e must be positive");
    }
    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= k;
    const double interference =
        1.0 + params.gamma_c * params.gamma_e / (4.0 * params.g_col * params.g_col);
    const double inner = factorial * params.gamma_e * params.gamma_e *
                         std::pow(params.g_col, 2.0 * (n - 1)) /
                         (16.0 * interference * interference);
    return std::pow(inner, 1.0 / (2.0 * n));
}

double poisson_weight(double alpha_sq, int n, PoissonMode mode) {
    if (alpha_sq < 0.0) throw std::invalid_argument("poisson_weight: alpha_sq must be >= 0");
    if (n < 0) throw std::invalid_argument("poisson_weight: n must be >= 0");
    if (alpha_sq == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    double log_w = n * std::log(alpha_sq) - std::lgamma(n + 1.0);
    if (mode == PoissonMode::exact) log_w -= alpha_sq;
    return std::exp(log_w);
}

CoherentAmplitudes coherent_amplitudes(const SystemParams& params) {
    params.validate();
    if (params.gamma_c <= 0.0 || params.g_col <= 0.0) {
        throw std::domain_error("coherent_amplitudes: gamma_c and g_col must be positive");
    }
    const double interference =
        1.0 + params.gamma_c * params.gamma_e / (4.0 * params.g_col * params.g_col);
    const double omega_eff = (1.0 - 1.0 / interference) * params.omega_drive_amp;
    const double omega_ens = params.omega_drive_amp / interference;
    const double timescale = 1.0 / params.g_col;
    CoherentAmplitudes out;
    out.alpha_c_sq = omega_eff * omega_eff / (params.gamma_c * params.gamma_c);
    out.alpha_c0_sq =
        params.omega_drive_amp * params.omega_drive_amp / (params.gamma_c * params.gamma_c);
    out.alpha_ens_sq = omega_ens * omega_ens * timescale * timescale;
    return out;
}

std::vector<SlopePoint> loglog_slopes(const DriveSweepSeries& series) {
    series.validate();
    const auto& pts = series.points;
    if (pts.size() < 3) {
        throw std::invalid_argument("loglog_slopes: need at least 3 points");
    }
    for (const auto& p : pts) {
        if (!(p.cavity_pop > 0.0) || !(p.omega_drive_amp > 0.0)) {
            throw std::domain_error("loglog_slopes: nonpositive population or drive in input");
        }
    }
    std::vector<SlopePoint> slopes;
    slopes.reserve(pts.size() - 2);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double dy = std::log(pts[i + 1].cavity_pop) - std::log(pts[i - 1].cavity_pop);
        const double dx =
            std::log(pts[i + 1].omega_drive_amp) - std::log(pts[i - 1].omega_drive_amp);
        slopes.push_back({pts[i].omega_drive_amp, dy / dx});
    }
    return slopes;
}

std::optional<double> detect_onset(const DriveSweepSeries& series, double threshold) {
    const std::vector<SlopePoint> slopes = loglog_slopes(series);
    const double target = 2.0 + threshold;
    for (std::size_t j = 0; j < slopes.size(); ++j) {
        if (slopes[j].slope >= target) {
            if (j == 0) return slopes[0].omega_drive_amp;
            // Linear interpolation in (log Omega_d, slope).
            const double x0 = std::log(slopes[j - 1].omega_drive_amp);
            const double x1 = std::log(slopes[j].omega_drive_amp);
            const double s0 = slopes[j - 1].slope;
            const double s1 = slopes[j].slope;
            const double frac = (target - s0) / (s1 - s0);
            return std::exp(x0 + frac * (x1 - x0));
        }
    }
    return std::nullopt;
}

std::optional<int> infer_emitter_count(const DriveSweepSeries& series) {
    const std::vector<SlopePoint> slopes = loglog_slopes(series);
    double max_slope = 0.0;
    for (const auto& s : slopes) max_slope = std::max(max_slope, s.slope);
    if (max_slope <= 2.5) return std::nullopt;
    return std::max(1, static_cast<int>(std::lround(max_slope / 2.0 - 1.0)));
}

}  // namespace tcsim
