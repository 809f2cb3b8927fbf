// model.hpp — Rotating-frame Tavis-Cummings Hamiltonian and Lindblad Liouvillian
//
// The lab-frame Hamiltonian is time-dependent through the drive; everything
// here lives in the frame rotating at the drive frequency omega_d, where the
// generator is time-independent and the steady state is the null vector of the
// Liouvillian. Detunings: Delta_c = omega_c - omega_d, Delta_e = omega_e - omega_d.
//
// Vectorization is column-stacking throughout: vec(rho) stacks columns, so
// entry (r, c) of rho sits at linear index r + c * dim and
// vec(A X B) = (B^T (x) A) vec(X).

#pragma once

#include "tcsim/hilbert.hpp"
#include "tcsim/params.hpp"

namespace tcsim {

struct Liouvillian {
    SparseMatrix matrix;  // dim^2 x dim^2 generator
    HilbertSpace space;
    SystemParams params;
};

// H = Delta_c a^dag a + sum_i [Delta_e sigma_+i sigma_-i
//       + g (a^dag sigma_-i + a sigma_+i)] + (Omega_d / 2)(a^dag + a),
// with g = g_col / sqrt(N).
SparseMatrix hamiltonian_rotating(const SystemParams& params, const HilbertSpace& space);

// Jump operators with their rates: {a, gamma_c} and {sigma_-i, gamma_e} for each i.
std::vector<std::pair<SparseMatrix, double>> jump_operators(const SystemParams& params,
                                                            const HilbertSpace& space);

// Vectorized Lindblad generator for an arbitrary Hamiltonian and jump set:
// L = -i (I (x) H - H^T (x) I)
//     + sum_k gamma_k [ conj(L_k) (x) L_k - 1/2 I (x) (L_k^dag L_k)
//                       - 1/2 (L_k^dag L_k)^T (x) I ].
SparseMatrix lindblad_superoperator(const SparseMatrix& hamiltonian,
                                    const std::vector<std::pair<SparseMatrix, double>>& jumps);

// Full Liouvillian of the rotating-frame model.
Liouvillian liouvillian(const SystemParams& params, const HilbertSpace& space);

// Drive displacement that cancels the linear cavity terms exactly:
// alpha = -Omega_d / (2 Delta_c - i gamma_c). On resonance this is the
// driven-damped-cavity amplitude -i Omega_d / gamma_c.
Complex cavity_displacement(const SystemParams& params);

// Hamiltonian in the frame displaced by beta (a -> a + beta): the emitters
// acquire a coherent drive g (beta^* sigma_- + beta sigma_+) and the cavity
// keeps a residual linear drive c a^dag + c^* a with
// c = (Delta_c - i gamma_c / 2) beta + Omega_d / 2. Jump operators are
// unchanged. The transformation is unitary, so observables map back exactly:
// <a^dag a> = <a^dag a>' + 2 Re(beta^* <a>') + |beta|^2.
SparseMatrix hamiltonian_displaced(const SystemParams& params, const HilbertSpace& space,
                                   Complex beta);

// Liouvillian of the displaced-frame model.
Liouvillian liouvillian_displaced(const SystemParams& params, const HilbertSpace& space,
                                  Complex beta);

// Column-stacking helpers.
DenseVector vectorize(const DenseMatrix& m);
DenseMatrix unvectorize(const DenseVector& v, int dim);

// Infinity norm (max absolute row sum) of a sparse matrix.
double inf_norm(const SparseMatrix& m);

}  // namespace tcsim
