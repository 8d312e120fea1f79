#include "qinfo/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qinfo {

namespace {
void check_finite(const std::vector<cplx>& v) {
    for (const cplx& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("non-finite entry");
    }
}
}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("entry count does not match rows*cols");
    check_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    check_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    ComplexMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = entries_[i * cols_ + k];
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.entries_[i * o.cols_ + j] += aik * o.entries_[k * o.cols_ + j];
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * s;
    return r;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    cplx t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const cplx& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const cplx& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    ComplexMatrix p = dagger() * (*this);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const cplx want = (i == j) ? cplx{1.0} : cplx{};
            if (std::abs(p(i, j) - want) > tol) return false;
        }
    return true;
}

Ket::Ket(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    check_finite(amps_);
    double n2 = 0;
    for (const cplx& z : amps_) n2 += std::norm(z);
    if (n2 <= 0) throw std::invalid_argument("zero ket");
    const double n = std::sqrt(n2);
    for (cplx& z : amps_) z /= n;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("basis index out of range");
    std::vector<cplx> a(dim);
    a[index] = 1.0;
    return Ket(std::move(a));
}

cplx Ket::inner(const Ket& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
    cplx s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

ComplexMatrix Ket::projector() const {
    ComplexMatrix p(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            p(i, j) = amps_[i] * std::conj(amps_[j]);
    return p;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

Ket tensor(const Ket& a, const Ket& b) {
    std::vector<cplx> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out[i * b.dim() + j] = a[i] * b[j];
    return Ket(std::move(out));
}

std::vector<cplx> apply(const ComplexMatrix& m, const Ket& psi) {
    if (m.cols() != psi.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * psi[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("incompatible factorization");
    std::size_t prod = 1;
    for (std::size_t d : dims) prod *= d;
    if (prod != rho.rows()) throw std::invalid_argument("incompatible factorization");
    for (std::size_t k : keep)
        if (k >= dims.size()) throw std::invalid_argument("incompatible factorization");

    const std::size_t nf = dims.size();
    std::vector<bool> kept(nf, false);
    for (std::size_t k : keep) kept[k] = true;

    // Strides with factor 0 most significant.
    std::vector<std::size_t> stride(nf, 1);
    for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

    std::size_t dim_keep = 1, dim_rest = 1;
    std::vector<std::size_t> keep_f, rest_f;
    for (std::size_t f = 0; f < nf; ++f) {
        if (kept[f]) { dim_keep *= dims[f]; keep_f.push_back(f); }
        else { dim_rest *= dims[f]; rest_f.push_back(f); }
    }

    auto expand = [&](std::size_t packed, const std::vector<std::size_t>& factors) {
        // packed index over `factors` (most significant first) -> full offset
        std::size_t off = 0;
        for (std::size_t idx = factors.size(); idx-- > 0;) {
            const std::size_t f = factors[idx];
            off += (packed % dims[f]) * stride[f];
            packed /= dims[f];
        }
        return off;
    };

    ComplexMatrix out(dim_keep, dim_keep);
    for (std::size_t i = 0; i < dim_keep; ++i) {
        const std::size_t oi = expand(i, keep_f);
        for (std::size_t j = 0; j < dim_keep; ++j) {
            const std::size_t oj = expand(j, keep_f);
            cplx s = 0;
            for (std::size_t t = 0; t < dim_rest; ++t) {
                const std::size_t ot = expand(t, rest_f);
                s += rho(oi + ot, oj + ot);
            }
            out(i, j) = s;
        }
    }
    return out;
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}

}  // namespace qinfo
