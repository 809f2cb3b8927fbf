// observables.hpp — Quantities extracted from a steady-state density matrix:
// cavity and ensemble populations, ground-block diagonal elements rho_{n,G},
// and the scattered signal.

#pragma once

#include <vector>

#include "tcsim/steady.hpp"

namespace tcsim {

struct ObservableSet {
    double cavity_pop = 0.0;            // <a^dag a>
    double ensemble_pop = 0.0;          // sum_i <sigma_+i sigma_-i>
    std::vector<double> diagonals;      // rho_{n,G}, n = 0 .. n_max
    double scattering = 0.0;            // gamma_c_rad * <a^dag a>
};

// Tr(op rho). The imaginary part is below 1e-10 for Hermitian op.
Complex expectation(const SparseMatrix& op, const DensityMatrix& rho);

// rho_{n,G} = <n, G| rho |n, G> with G the all-ground spin state.
double diagonal_element(const DensityMatrix& rho, int n, const HilbertSpace& space);

// Scattered signal S = gamma_c_rad * <a^dag a> (proportionality constant 1,
// so S carries units of gamma_c_rad * photons).
double scattering_signal(const SystemParams& params, const DensityMatrix& rho);

// All of the above in one pass.
ObservableSet observable_set(const SystemParams& params, const HilbertSpace& space,
                             const DensityMatrix& rho);

}  // namespace tcsim
