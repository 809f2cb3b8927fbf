#include "tcsim/model.hpp"

#include <stdexcept>

namespace tcsim {

namespace {

const Complex kImag(0.0, 1.0);

void check_space(const SystemParams& params, const HilbertSpace& space, const char* who) {
    if (space.n_emitters != params.n_emitters) {
        throw std::invalid_argument(std::string(who) + ": space/params emitter count mismatch");
    }
}

}  // namespace

SparseMatrix hamiltonian_rotating(const SystemParams& params, const HilbertSpace& space) {
    check_space(params, space, "hamiltonian_rotating");
    params.validate();

    const double delta_c = params.detuning_cavity();
    const double delta_e = params.detuning_emitter();
    const double g = params.g_single();

    const SparseMatrix a = cavity_annihilation(space);
    const SparseMatrix a_dag = a.adjoint();

    SparseMatrix h = delta_c * number_op(space);
    for (int i = 1; i <= space.n_emitters; ++i) {
        const SparseMatrix sm = lowering_op(i, space);
        h += delta_e * excitation_projector(i, space);
        h += g * (SparseMatrix(a_dag * sm) + SparseMatrix(SparseMatrix(sm.adjoint()) * a));
    }
    h += (params.omega_drive_amp / 2.0) * (a_dag + a);
    h.makeCompressed();
    h.prune([](int, int, const Complex& v) { return std::abs(v) > 0.0; });
    return h;
}

std::vector<std::pair<SparseMatrix, double>> jump_operators(const SystemParams& params,
                                                            const HilbertSpace& space) {
    check_space(params, space, "jump_operators");
    std::vector<std::pair<SparseMatrix, double>> jumps;
    jumps.reserve(1 + space.n_emitters);
    jumps.emplace_back(cavity_annihilation(space), params.gamma_c);
    for (int i = 1; i <= space.n_emitters; ++i) {
        jumps.emplace_back(lowering_op(i, space), params.gamma_e);
    }
    return jumps;
}

SparseMatrix lindblad_superoperator(const SparseMatrix& hamiltonian,
                                    const std::vector<std::pair<SparseMatrix, double>>& jumps) {
    const int dim = static_cast<int>(hamiltonian.rows());
    if (hamiltonian.cols() != dim) {
        throw std::invalid_argument("lindblad_superoperator: Hamiltonian must be square");
    }
    const SparseMatrix id = identity_op(dim);

    SparseMatrix l = -kImag * (tensor_product(id, hamiltonian) -
                               tensor_product(SparseMatrix(hamiltonian.transpose()), id));

    for (const auto& [op, rate] : jumps) {
        if (op.rows() != dim || op.cols() != dim) {
            throw std::invalid_argument("lindblad_superoperator: jump operator dim mismatch");
        }
        if (rate == 0.0) continue;
        const SparseMatrix op_dag_op = SparseMatrix(op.adjoint()) * op;
        l += rate * tensor_product(SparseMatrix(op.conjugate()), op);
        l -= (rate / 2.0) * tensor_product(id, op_dag_op);
        l -= (rate / 2.0) * tensor_product(SparseMatrix(op_dag_op.transpose()), id);
    }
    l.makeCompressed();
    return l;
}

Liouvillian liouvillian(const SystemParams& params, const HilbertSpace& space) {
    check_space(params, space, "liouvillian");
    params.validate();
    return Liouvillian{
        lindblad_superoperator(hamiltonian_rotating(params, space), jump_operators(params, space)),
        space, params};
}

Complex cavity_displacement(const SystemParams& params) {
    const Complex denom(2.0 * params.detuning_cavity(), -params.gamma_c);
    if (std::abs(denom) == 0.0) {
        throw std::domain_error("cavity_displacement: undamped resonant cavity has no fixed point");
    }
    return -params.omega_drive_amp / denom;
}

SparseMatrix hamiltonian_displaced(const SystemParams& params, const HilbertSpace& space,
                                   Complex beta) {
    check_space(params, space, "hamiltonian_displaced");
    params.validate();

    const double delta_c = params.detuning_cavity();
    const double delta_e = params.detuning_emitter();
    const double g = params.g_single();

    const SparseMatrix a = cavity_annihilation(space);
    const SparseMatrix a_dag = a.adjoint();

    SparseMatrix h = delta_c * number_op(space);
    for (int i = 1; i <= space.n_emitters; ++i) {
        const SparseMatrix sm = lowering_op(i, space);
        const SparseMatrix sp = sm.adjoint();
        h += delta_e * excitation_projector(i, space);
        h += g * (SparseMatrix(a_dag * sm) + SparseMatrix(sp * a));
        h += g * (std::conj(beta) * sm + beta * sp);
    }
    // Residual linear cavity drive; vanishes when beta = cavity_displacement.
    const Complex c = Complex(params.detuning_cavity(), -params.gamma_c / 2.0) * beta +
                      params.omega_drive_amp / 2.0;
    h += c * a_dag + std::conj(c) * a;
    h.makeCompressed();
    return h;
}

Liouvillian liouvillian_displaced(const SystemParams& params, const HilbertSpace& space,
                                  Complex beta) {
    check_space(params, space, "liouvillian_displaced");
    return Liouvillian{lindblad_superoperator(hamiltonian_displaced(params, space, beta),
                                              jump_operators(params, space)),
                       space, params};
}

DenseVector vectorize(const DenseMatrix& m) {
    return Eigen::Map<const DenseVector>(m.data(), m.size());
}

DenseMatrix unvectorize(const DenseVector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument("unvectorize: length is not dim^2");
    }
    return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

double inf_norm(const SparseMatrix& m) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            row_sums[it.row()] += std::abs(it.value());
        }
    }
    return m.rows() == 0 ? 0.0 : row_sums.maxCoeff();
}

}  // namespace tcsim
