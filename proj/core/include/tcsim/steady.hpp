// steady.hpp — Steady-state solve of L[rho] = 0, RK4 evolution oracle, and
// automatic Fock truncation.

#pragma once

#include "tcsim/errors.hpp"
#include "tcsim/model.hpp"

namespace tcsim {

struct DensityMatrix {
    DenseMatrix entries;

    int dim() const { return static_cast<int>(entries.rows()); }

    // Hermitian within hermit_tol, unit trace within trace_tol, smallest
    // eigenvalue >= -positivity_tol. Throws SolveError on violation.
    void validate(double hermit_tol = 1e-10, double trace_tol = 1e-10,
                  double positivity_tol = 1e-8) const;

    double min_eigenvalue() const;
};

struct SteadyOptions {
    double tol = 1e-10;        // residual tolerance relative to ||L||_inf
    bool check_positivity = true;
};

struct SteadySolution {
    DensityMatrix rho;
    double residual_inf = 0.0;  // ||L vec(rho)||_inf after normalization
};

// Solves L[rho_ss] = 0 with Tr rho_ss = 1: the first row of L is replaced by
// the vectorized trace functional and the sparse non-Hermitian system is
// solved by sparse LU (dense LU fallback for dim^2 <= 4096 if the sparse
// factorization reports a singular pivot). The result is symmetrized via
// (rho + rho^dag)/2, trace-renormalized, residual-checked against the
// unmodified L, and positivity-checked.
SteadySolution steady_state_full(const Liouvillian& l, const SteadyOptions& opts = {});

DensityMatrix steady_state(const Liouvillian& l, double tol = 1e-10);

// Classical RK4 integration of d vec(rho)/dt = L vec(rho). Fails if the trace
// drifts by more than 1e-6 or the state becomes non-finite. Requires
// dt * ||L||_inf small enough for RK4 stability.
DensityMatrix evolve_oracle(const Liouvillian& l, const DensityMatrix& rho0, double t_end,
                            double dt);

struct TruncationOptions {
    int start = 4;
    int step = 4;
    int hard_cap = 40;
};

// Smallest n_max (within the visited sequence) such that the combined
// steady-state population of the top two Fock levels is below tail_tol,
// found by incrementing n_max and re-solving. The search starts no lower
// than ceil(3 Omega_d^2 / gamma_c^2). Throws SolveError when the hard cap
// is exceeded.
int auto_truncate(const SystemParams& params, double tail_tol = 1e-8,
                  const TruncationOptions& opts = {});

// Combined population of the top two Fock levels (summed over all spin
// configurations).
double fock_tail_population(const DensityMatrix& rho, const HilbertSpace& space);

}  // namespace tcsim
