#pragma once

#include "qinfo/matrix.hpp"

namespace qinfo {

// Eigenvalues in non-increasing order, eigenvectors orthonormal, and each
// eigenvector's first nonzero component rotated to be real positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Ket> eigenvectors;
};

// Biorthogonal form sum_i sqrt(p_i) |a_i>|b_i> with coefficients in
// non-increasing order.
struct SchmidtDecomposition {
    std::vector<double> coefficients;
    std::vector<Ket> basis_a;
    std::vector<Ket> basis_b;
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.  Throws on
// non-Hermitian input.
EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol = kAlgebraicTol);

// Schmidt decomposition of a bipartite pure state with dim_a * dim_b = psi.dim().
SchmidtDecomposition schmidt_decompose(const Ket& psi, std::size_t dim_a, std::size_t dim_b);

// Principal square root of a positive semidefinite matrix.  Eigenvalues in
// [-1e-10, 0) are clamped to 0; anything lower is an error.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

}  // namespace qinfo
