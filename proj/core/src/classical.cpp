#include "tcsim/classical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace tcsim {

namespace {

using Cx = std::complex<double>;

Cx response_denominator(const SystemParams& p, double omega_d) {
    const Cx cav(p.omega_c * p.omega_c - omega_d * omega_d, omega_d * p.gamma_c);
    const Cx emi(p.omega_e * p.omega_e - omega_d * omega_d, omega_d * p.gamma_e);
    const double g = p.g_single();
    return cav * emi - 4.0 * p.n_emitters * g * g * p.omega_c * p.omega_e;
}

}  // namespace

ClassicalAmplitudes co_amplitudes(const SystemParams& params, double omega_d) {
    params.validate();
    const Cx denom = response_denominator(params, omega_d);
    const double scale = params.omega_c * params.omega_c + omega_d * omega_d;
    if (std::abs(denom) <= 1e-14 * scale * scale) {
        throw SolveError("co_amplitudes: vanishing response denominator (lossless resonant pole)");
    }
    const double g = params.g_single();
    const double drive = params.omega_drive_amp * std::sqrt(2.0 * params.omega_c);
    const Cx emi(params.omega_e * params.omega_e - omega_d * omega_d, omega_d * params.gamma_e);
    return ClassicalAmplitudes{
        drive * emi / denom,
        -2.0 * g * std::sqrt(params.omega_c * params.omega_e) * drive / denom,
    };
}

ClassicalPopulations co_populations(const SystemParams& params, double omega_d) {
    const ClassicalAmplitudes amps = co_amplitudes(params, omega_d);
    return ClassicalPopulations{
        params.omega_c * std::norm(amps.c0) / 2.0,
        params.n_emitters * params.omega_e * std::norm(amps.ci) / 2.0,
    };
}

double effective_drive(const SystemParams& params) {
    params.validate();
    const double loss_product = params.gamma_c * params.gamma_e;
    if (params.g_col == 0.0) {
        if (loss_product == 0.0) {
            throw std::invalid_argument("effective_drive: needs g_col > 0 or gamma_c gamma_e > 0");
        }
        return params.omega_drive_amp;  // decoupled limit: no interference
    }
    const double x = loss_product / (4.0 * params.g_col * params.g_col);
    return (1.0 - 1.0 / (1.0 + x)) * params.omega_drive_amp;
}

double weak_resonant_population(const SystemParams& params) {
    params.validate();
    if (params.g_col == 0.0) {
        throw std::domain_error(
            "weak_resonant_population: diverges at g_col = 0; use uncoupled_population");
    }
    const double g2 = params.g_col * params.g_col;
    const double x = params.gamma_c * params.gamma_e / (4.0 * g2);
    const double base = params.omega_drive_amp * params.gamma_e / (4.0 * g2);
    return base * base / ((1.0 + x) * (1.0 + x));
}

double uncoupled_population(const SystemParams& params) {
    params.validate();
    if (params.gamma_c == 0.0) {
        throw std::domain_error("uncoupled_population: gamma_c must be positive");
    }
    const double r = params.omega_drive_amp / params.gamma_c;
    return r * r;
}

double suppression_ratio(const SystemParams& params) {
    params.validate();
    if (params.g_col == 0.0) return 1.0;  // decoupled limit: no suppression
    SystemParams probe = params;
    if (probe.omega_drive_amp == 0.0) probe.omega_drive_amp = 1.0;  // ratio is drive-free
    return weak_resonant_population(probe) / uncoupled_population(probe);
}

double drive_suppression_factor(const SystemParams& params) {
    params.validate();
    if (params.gamma_c * params.gamma_e == 0.0 || params.g_col == 0.0) {
        throw std::domain_error("drive_suppression_factor: needs positive rates and coupling");
    }
    const double coop = 4.0 * params.g_col * params.g_col / (params.gamma_c * params.gamma_e);
    return 1.0 / (coop + 1.0);
}

ClassicalMap quantum_to_classical_map(const SystemParams& params) {
    params.validate();
    const double g = params.g_single();
    const double k = -2.0 * g * std::sqrt(params.omega_c * params.omega_e);
    return ClassicalMap{
        k,
        params.omega_c * params.omega_c - k,
        params.omega_e * params.omega_e - k,
        params.omega_drive_amp * std::sqrt(2.0 * params.omega_c),
    };
}

ClassicalAmplitudes classical_ode_oracle(const SystemParams& params, double omega_d,
                                         double t_end, const OdeOracleOptions& opts) {
    params.validate();
    if (!(omega_d > 0.0)) {
        throw std::invalid_argument("classical_ode_oracle: omega_d must be positive");
    }
    if (opts.steps_per_period < 16) {
        throw std::invalid_argument("classical_ode_oracle: too few steps per period");
    }

    const int n = params.n_emitters;
    const double coupling = 2.0 * params.g_single() * std::sqrt(params.omega_c * params.omega_e);
    const double drive = params.omega_drive_amp * std::sqrt(2.0 * params.omega_c);
    const double wc2 = params.omega_c * params.omega_c;
    const double we2 = params.omega_e * params.omega_e;

    // State layout: (x_0, v_0, x_1, v_1, ..., x_N, v_N).
    const int dim = 2 * (n + 1);
    std::vector<double> y(dim, 0.0), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    auto deriv = [&](const std::vector<double>& s, double t, std::vector<double>& out) {
        double x_sum = 0.0;
        for (int i = 1; i <= n; ++i) x_sum += s[2 * i];
        out[0] = s[1];
        out[1] = -params.gamma_c * s[1] - wc2 * s[0] - coupling * x_sum +
                 drive * std::cos(omega_d * t);
        for (int i = 1; i <= n; ++i) {
            out[2 * i] = s[2 * i + 1];
            out[2 * i + 1] = -params.gamma_e * s[2 * i + 1] - we2 * s[2 * i] - coupling * s[0];
        }
    };

    const double period = 2.0 * std::numbers::pi / omega_d;
    const long n_periods = std::max<long>(2, static_cast<long>(std::ceil(t_end / period)));
    const double dt = period / opts.steps_per_period;
    const long total_steps = n_periods * opts.steps_per_period;

    // Running quadrature projections (2/T) int x(t) e^{-i omega_d t} dt over
    // the last two periods, accumulated with the periodic trapezoidal rule.
    const long window_b_start = total_steps - opts.steps_per_period;
    const long window_a_start = window_b_start - opts.steps_per_period;
    Cx proj_a0(0, 0), proj_ai(0, 0), proj_b0(0, 0), proj_bi(0, 0);
    const double weight = 2.0 * dt / period;

    auto accumulate = [&](long step, double t) {
        const Cx phase = std::exp(Cx(0.0, -omega_d * t)) * weight;
        if (step >= window_a_start && step < window_b_start) {
            proj_a0 += y[0] * phase;
            proj_ai += y[2] * phase;
        } else if (step >= window_b_start && step < total_steps) {
            proj_b0 += y[0] * phase;
            proj_bi += y[2] * phase;
        }
    };

    for (long step = 0; step < total_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        accumulate(step, t);

        deriv(y, t, k1);
        for (int j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
        deriv(tmp, t + 0.5 * dt, k2);
        for (int j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
        deriv(tmp, t + 0.5 * dt, k3);
        for (int j = 0; j < dim; ++j) tmp[j] = y[j] + dt * k3[j];
        deriv(tmp, t + dt, k4);
        for (int j = 0; j < dim; ++j) {
            y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if (!std::isfinite(y[0])) {
            throw SolveError("classical_ode_oracle: integration diverged");
        }
    }

    const double mag = std::abs(proj_b0);
    if (mag > 1e-300) {
        const double drift = std::abs(std::abs(proj_a0) - mag) / mag;
        if (drift > opts.drift_tol) {
            std::ostringstream msg;
            msg << "classical_ode_oracle: transient not converged (amplitude drift " << drift
                << ")";
            throw SolveError(msg.str());
        }
    }
    return ClassicalAmplitudes{proj_b0, proj_bi};
}

}  // namespace tcsim
