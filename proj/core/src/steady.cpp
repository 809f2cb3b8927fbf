#include "tcsim/steady.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

namespace tcsim {

void DensityMatrix::validate(double hermit_tol, double trace_tol, double positivity_tol) const {
    if (entries.rows() != entries.cols()) {
        throw SolveError("DensityMatrix: not square");
    }
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= hermit_tol)) {
        std::ostringstream msg;
        msg << "DensityMatrix: Hermiticity violation " << herm;
        throw SolveError(msg.str());
    }
    const double trace_err = std::abs(entries.trace() - Complex(1.0, 0.0));
    if (!(trace_err <= trace_tol)) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace deviates from 1 by " << trace_err;
        throw SolveError(msg.str());
    }
    const double min_eig = min_eigenvalue();
    if (!(min_eig >= -positivity_tol)) {
        std::ostringstream msg;
        msg << "DensityMatrix: negative eigenvalue " << min_eig;
        throw SolveError(msg.str());
    }
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SolveError("DensityMatrix: eigenvalue computation failed");
    }
    return solver.eigenvalues().minCoeff();
}

namespace {

// L with its first row replaced by the vectorized trace functional vec(I)^dag.
SparseMatrix trace_constrained_system(const SparseMatrix& l, int dim) {
    std::vector<Triplet> entries;
    entries.reserve(l.nonZeros() + dim);
    for (int k = 0; k < l.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l, k); it; ++it) {
            if (it.row() != 0) {
                entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                     it.value());
            }
        }
    }
    for (int i = 0; i < dim; ++i) {
        entries.emplace_back(0, i * (dim + 1), Complex(1.0, 0.0));
    }
    SparseMatrix a(l.rows(), l.cols());
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    return a;
}

DenseVector solve_dense_fallback(const SparseMatrix& a, const DenseVector& rhs) {
    DenseMatrix a_dense(a);
    Eigen::FullPivLU<DenseMatrix> lu(a_dense);
    if (!lu.isInvertible()) {
        throw SolveError(
            "steady_state: singular linear system (degenerate steady states suspected)");
    }
    return lu.solve(rhs);
}

}  // namespace

SteadySolution steady_state_full(const Liouvillian& l, const SteadyOptions& opts) {
    const int dim = l.space.dim();
    const Eigen::Index dim2 = static_cast<Eigen::Index>(dim) * dim;
    if (l.matrix.rows() != dim2 || l.matrix.cols() != dim2) {
        throw std::invalid_argument("steady_state: Liouvillian dimension mismatch");
    }

    const SparseMatrix a = trace_constrained_system(l.matrix, dim);
    DenseVector rhs = DenseVector::Zero(dim2);
    rhs[0] = Complex(1.0, 0.0);

    DenseVector x;
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() == Eigen::Success) {
        x = lu.solve(rhs);
        // One step of iterative refinement; the observables span many decades
        // and the raw LU forward error is not always small enough for the
        // weakest-drive rows.
        DenseVector residual = rhs - a * x;
        x += lu.solve(residual);
    } else if (dim2 <= 4096) {
        x = solve_dense_fallback(a, rhs);
    } else {
        throw SolveError("steady_state: sparse LU factorization failed (singular pivot)");
    }

    if (!x.allFinite()) {
        throw SolveError("steady_state: non-finite solution");
    }

    DenseMatrix rho = unvectorize(x, dim);
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    const Complex trace = rho.trace();
    if (std::abs(trace) < 1e-300) {
        throw SolveError("steady_state: zero-trace solution");
    }
    rho /= trace;

    const double residual_inf = (l.matrix * vectorize(rho)).cwiseAbs().maxCoeff();
    const double scale = inf_norm(l.matrix);
    if (scale > 0.0 && !(residual_inf <= opts.tol * scale)) {
        std::ostringstream msg;
        msg << "steady_state: residual " << residual_inf << " exceeds tolerance "
            << opts.tol * scale << " (tol " << opts.tol << " x scale " << scale << ")";
        throw SolveError(msg.str());
    }

    DensityMatrix out{std::move(rho)};
    if (opts.check_positivity) {
        out.validate();
    }
    return SteadySolution{std::move(out), residual_inf};
}

DensityMatrix steady_state(const Liouvillian& l, double tol) {
    SteadyOptions opts;
    opts.tol = tol;
    return steady_state_full(l, opts).rho;
}

DensityMatrix evolve_oracle(const Liouvillian& l, const DensityMatrix& rho0, double t_end,
                            double dt) {
    const int dim = l.space.dim();
    if (rho0.dim() != dim) {
        throw std::invalid_argument("evolve_oracle: state dimension mismatch");
    }
    if (!(dt > 0.0) || !(t_end >= 0.0)) {
        throw std::invalid_argument("evolve_oracle: need dt > 0 and t_end >= 0");
    }
    if (dt * inf_norm(l.matrix) > 2.5) {
        throw std::invalid_argument("evolve_oracle: dt too large for RK4 stability");
    }

    const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

    DenseVector v = vectorize(rho0.entries);
    const double trace0 = std::abs(unvectorize(v, dim).trace());
    DenseVector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
    for (long s = 0; s < steps; ++s) {
        k1.noalias() = l.matrix * v;
        k2.noalias() = l.matrix * (v + (h / 2.0) * k1);
        k3.noalias() = l.matrix * (v + (h / 2.0) * k2);
        k4.noalias() = l.matrix * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (s % 64 == 0 || s + 1 == steps) {
            if (!v.allFinite()) {
                throw SolveError("evolve_oracle: non-finite state (instability)");
            }
            const double drift = std::abs(std::abs(unvectorize(v, dim).trace()) - trace0);
            if (drift > 1e-6) {
                std::ostringstream msg;
                msg << "evolve_oracle: trace drift " << drift << " exceeds 1e-6";
                throw SolveError(msg.str());
            }
        }
    }
    return DensityMatrix{unvectorize(v, dim)};
}

double fock_tail_population(const DensityMatrix& rho, const HilbertSpace& space) {
    if (rho.dim() != space.dim()) {
        throw std::invalid_argument("fock_tail_population: dimension mismatch");
    }
    double tail = 0.0;
    for (int n = std::max(0, space.n_max - 1); n <= space.n_max; ++n) {
        for (int s = 0; s < space.spin_dim(); ++s) {
            const int idx = n * space.spin_dim() + s;
            tail += rho.entries(idx, idx).real();
        }
    }
    return tail;
}

int auto_truncate(const SystemParams& params, double tail_tol, const TruncationOptions& opts) {
    params.validate();
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw std::invalid_argument("auto_truncate: tail_tol must lie in (0, 1)");
    }
    int lower_bound = 0;
    if (params.gamma_c > 0.0 && params.omega_drive_amp > 0.0) {
        const double ratio = params.omega_drive_amp / params.gamma_c;
        lower_bound = static_cast<int>(std::ceil(3.0 * ratio * ratio));
    }
    int n_max = std::max(opts.start, lower_bound);
    while (true) {
        if (n_max > opts.hard_cap) {
            std::ostringstream msg;
            msg << "auto_truncate: required n_max " << n_max << " exceeds hard cap "
                << opts.hard_cap;
            throw SolveError(msg.str());
        }
        const HilbertSpace space(params.n_emitters, n_max);
        const DensityMatrix rho = steady_state(liouvillian(params, space));
        if (fock_tail_population(rho, space) < tail_tol) {
            return n_max;
        }
        n_max += opts.step;
    }
}

}  // namespace tcsim
