#include "tcsim/hilbert.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace tcsim {

HilbertSpace::HilbertSpace(int n_emitters_, int n_max_)
    : n_emitters(n_emitters_), n_max(n_max_) {
    if (n_emitters < 1) {
        throw std::invalid_argument("HilbertSpace: n_emitters must be >= 1");
    }
    if (n_max < 1) {
        throw std::invalid_argument("HilbertSpace: n_max must be >= 1");
    }
    if (n_emitters > 24) {
        throw std::invalid_argument("HilbertSpace: 2^N overflows practical limits");
    }
}

int basis_index(int n, const std::vector<int>& spins, const HilbertSpace& space) {
    if (n < 0 || n > space.n_max) {
        throw std::out_of_range("basis_index: photon number outside [0, n_max]");
    }
    if (static_cast<int>(spins.size()) != space.n_emitters) {
        throw std::invalid_argument("basis_index: spin vector length != n_emitters");
    }
    int s = 0;
    for (int i = 0; i < space.n_emitters; ++i) {
        if (spins[i] != 0 && spins[i] != 1) {
            throw std::invalid_argument("basis_index: spins must be 0 or 1");
        }
        s |= spins[i] << (space.n_emitters - 1 - i);
    }
    return n * space.spin_dim() + s;
}

std::pair<int, std::vector<int>> basis_state(int index, const HilbertSpace& space) {
    if (index < 0 || index >= space.dim()) {
        throw std::out_of_range("basis_state: index outside [0, dim)");
    }
    const int n = index / space.spin_dim();
    const int s = index % space.spin_dim();
    std::vector<int> spins(space.n_emitters);
    for (int i = 0; i < space.n_emitters; ++i) {
        spins[i] = (s >> (space.n_emitters - 1 - i)) & 1;
    }
    return {n, spins};
}

int ground_block_index(int n, const HilbertSpace& space) {
    if (n < 0 || n > space.n_max) {
        throw std::out_of_range("ground_block_index: photon number outside [0, n_max]");
    }
    return n * space.spin_dim();
}

SparseMatrix annihilation_op(int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("annihilation_op: n_max must be >= 1");
    }
    SparseMatrix a(n_max + 1, n_max + 1);
    std::vector<Triplet> entries;
    entries.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        entries.emplace_back(n - 1, n, Complex(std::sqrt(static_cast<double>(n)), 0.0));
    }
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

SparseMatrix identity_op(int dim) {
    SparseMatrix id(dim, dim);
    id.setIdentity();
    return id;
}

SparseMatrix tensor_product(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out = Eigen::kroneckerProduct(a, b);
    out.makeCompressed();
    return out;
}

SparseMatrix lowering_op(int i, const HilbertSpace& space) {
    if (i < 1 || i > space.n_emitters) {
        throw std::out_of_range("lowering_op: emitter index outside [1, N]");
    }
    const int bit = 1 << (space.n_emitters - i);
    const int spin_dim = space.spin_dim();
    std::vector<Triplet> entries;
    entries.reserve(space.dim() / 2);
    for (int n = 0; n <= space.n_max; ++n) {
        const int base = n * spin_dim;
        for (int s = 0; s < spin_dim; ++s) {
            if (s & bit) {
                entries.emplace_back(base + (s & ~bit), base + s, Complex(1.0, 0.0));
            }
        }
    }
    SparseMatrix op(space.dim(), space.dim());
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

SparseMatrix excitation_projector(int i, const HilbertSpace& space) {
    if (i < 1 || i > space.n_emitters) {
        throw std::out_of_range("excitation_projector: emitter index outside [1, N]");
    }
    const int bit = 1 << (space.n_emitters - i);
    std::vector<Triplet> entries;
    for (int idx = 0; idx < space.dim(); ++idx) {
        if ((idx % space.spin_dim()) & bit) {
            entries.emplace_back(idx, idx, Complex(1.0, 0.0));
        }
    }
    SparseMatrix op(space.dim(), space.dim());
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

SparseMatrix cavity_annihilation(const HilbertSpace& space) {
    return tensor_product(annihilation_op(space.n_max), identity_op(space.spin_dim()));
}

SparseMatrix number_op(const HilbertSpace& space) {
    std::vector<Triplet> entries;
    entries.reserve(space.dim());
    for (int idx = space.spin_dim(); idx < space.dim(); ++idx) {
        const int n = idx / space.spin_dim();
        entries.emplace_back(idx, idx, Complex(static_cast<double>(n), 0.0));
    }
    SparseMatrix op(space.dim(), space.dim());
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

bool is_hermitian(const SparseMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    SparseMatrix diff = SparseMatrix(a.adjoint()) - a;
    for (int k = 0; k < diff.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
            if (std::abs(it.value()) > tol) return false;
        }
    }
    return true;
}

bool all_finite(const SparseMatrix& a) {
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
            if (!std::isfinite(it.value().real()) || !std::isfinite(it.value().imag())) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace tcsim
