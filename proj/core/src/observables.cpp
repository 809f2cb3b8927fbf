#include "tcsim/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace tcsim {

Complex expectation(const SparseMatrix& op, const DensityMatrix& rho) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
        throw std::invalid_argument("expectation: operator/state dimension mismatch");
    }
    // Tr(O rho) = sum_{ij} O_ij rho_ji
    Complex sum(0.0, 0.0);
    for (int k = 0; k < op.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(op, k); it; ++it) {
            sum += it.value() * rho.entries(it.col(), it.row());
        }
    }
    return sum;
}

double diagonal_element(const DensityMatrix& rho, int n, const HilbertSpace& space) {
    if (rho.dim() != space.dim()) {
        throw std::invalid_argument("diagonal_element: dimension mismatch");
    }
    const int idx = ground_block_index(n, space);
    return rho.entries(idx, idx).real();
}

double scattering_signal(const SystemParams& params, const DensityMatrix& rho) {
    if (params.gamma_c_rad == 0.0) return 0.0;
    const int spin_dim = 1 << params.n_emitters;
    if (rho.dim() % spin_dim != 0) {
        throw std::invalid_argument("scattering_signal: state incompatible with n_emitters");
    }
    const HilbertSpace space(params.n_emitters, rho.dim() / spin_dim - 1);
    return params.gamma_c_rad * expectation(number_op(space), rho).real();
}

ObservableSet observable_set(const SystemParams& params, const HilbertSpace& space,
                             const DensityMatrix& rho) {
    if (rho.dim() != space.dim()) {
        throw std::invalid_argument("observable_set: dimension mismatch");
    }
    ObservableSet out;
    out.cavity_pop = expectation(number_op(space), rho).real();
    for (int i = 1; i <= space.n_emitters; ++i) {
        out.ensemble_pop += expectation(excitation_projector(i, space), rho).real();
    }
    out.diagonals.resize(space.n_max + 1);
    for (int n = 0; n <= space.n_max; ++n) {
        out.diagonals[n] = diagonal_element(rho, n, space);
    }
    out.scattering = params.gamma_c_rad * out.cavity_pop;
    return out;
}

}  // namespace tcsim
