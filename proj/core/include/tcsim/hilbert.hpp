// hilbert.hpp — Truncated Fock x N-qubit Hilbert space and elementary sparse operators
//
// Basis convention: the Fock index is the slowest-varying factor, emitter 1 the
// next, so |n; s_1 ... s_N> maps to index n * 2^N + sum_i s_i * 2^(N - i) with
// s_i in {0 = ground, 1 = excited}. This makes rho_{n,G} extraction a single
// stride-2^N diagonal lookup.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace tcsim {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<Complex>;

struct HilbertSpace {
    int n_emitters = 1;  // N >= 1
    int n_max = 1;       // Fock truncation, photon numbers 0..n_max

    HilbertSpace(int n_emitters_, int n_max_);

    int spin_dim() const { return 1 << n_emitters; }
    int fock_dim() const { return n_max + 1; }
    int dim() const { return fock_dim() * spin_dim(); }
};

// Index of |n; s_1 ... s_N> under the convention above. Round-trips with
// basis_state. Throws on out-of-range n or mismatched spin-vector length.
int basis_index(int n, const std::vector<int>& spins, const HilbertSpace& space);

// Inverse of basis_index: decodes (photon number, spin bits).
std::pair<int, std::vector<int>> basis_state(int index, const HilbertSpace& space);

// Index of |n; g ... g> (all emitters in the ground state).
int ground_block_index(int n, const HilbertSpace& space);

// Cavity annihilation operator on the bare (n_max+1)-dimensional Fock factor:
// <n-1| a |n> = sqrt(n). Rejects n_max = 0.
SparseMatrix annihilation_op(int n_max);

// Identity of the given dimension.
SparseMatrix identity_op(int dim);

// Kronecker product, dims multiply; index convention
// (A (x) B)[i_A * dim_B + i_B, j_A * dim_B + j_B] = A[i_A, j_A] B[i_B, j_B].
SparseMatrix tensor_product(const SparseMatrix& a, const SparseMatrix& b);

// Pauli lowering operator for emitter i (1-based), embedded in the full space:
// identity on the Fock factor and on every other emitter.
SparseMatrix lowering_op(int i, const HilbertSpace& space);

// sigma_+i sigma_-i, the excited-state projector of emitter i, full space.
SparseMatrix excitation_projector(int i, const HilbertSpace& space);

// Cavity annihilation operator embedded in the full space (a (x) I_spins).
SparseMatrix cavity_annihilation(const HilbertSpace& space);

// a^dag a on the full space (diagonal).
SparseMatrix number_op(const HilbertSpace& space);

// True if A = A^dag entrywise within tol.
bool is_hermitian(const SparseMatrix& a, double tol = 1e-14);

// True if every stored entry is finite.
bool all_finite(const SparseMatrix& a);

}  // namespace tcsim
