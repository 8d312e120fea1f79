// Dense complex linear algebra for finite-dimensional Hilbert spaces.
//
// Index convention used throughout: tensor factor 0 is the most significant
// factor, so the basis index of |b0 b1 ... b_{n-1}> is sum b_i * 2^(n-1-i).

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qinfo {

using cplx = std::complex<double>;

inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kIterativeTol = 1e-8;

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(cplx s) const;
    ComplexMatrix dagger() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;  // largest entry magnitude
    bool is_hermitian(double tol = kAlgebraicTol) const;
    bool is_unitary(double tol = kAlgebraicTol) const;

private:
    std::size_t rows_, cols_;
    std::vector<cplx> entries_;
};

// Unit vector in a finite-dimensional Hilbert space.
class Ket {
public:
    Ket() = default;
    // Normalizes on construction; throws if the norm is zero or any entry
    // is non-finite.
    explicit Ket(std::vector<cplx> amplitudes);
    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    // <*this | other>
    cplx inner(const Ket& other) const;
    // |psi><psi|
    ComplexMatrix projector() const;

private:
    std::vector<cplx> amps_;
};

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
Ket tensor(const Ket& a, const Ket& b);

// Apply a matrix to a ket without renormalizing; returns raw amplitudes.
std::vector<cplx> apply(const ComplexMatrix& m, const Ket& psi);

// Reduced operator on the kept tensor factors.  `dims` lists the factor
// dimensions most-significant first; their product must equal the matrix
// dimension.  Throws std::invalid_argument("incompatible factorization")
// otherwise.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

// Pauli and Hadamard matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

}  // namespace qinfo
