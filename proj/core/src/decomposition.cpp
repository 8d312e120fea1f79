#include "qinfo/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qinfo {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Rotate the phase of a unit vector so its first component above threshold
// is real positive.  Makes decompositions deterministic.
void canonical_phase(std::vector<cplx>& v) {
    for (const cplx& z : v) {
        const double a = std::abs(z);
        if (a > 1e-9) {
            const cplx ph = std::conj(z) / a;
            for (cplx& w : v) w *= ph;
            return;
        }
    }
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_hermitian(tol)) throw std::invalid_argument("matrix is not Hermitian");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double target = 1e-12 * scale;

    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx b = a(p, q);
                const double ab = std::abs(b);
                if (ab <= 1e-300) { a(p, q) = a(q, p) = 0; continue; }
                const cplx phase = b / ab;  // b = |b| e^{i beta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * ab);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G = diag-phase * real rotation on the (p,q) plane
                const cplx gpp = c, gpq = s;
                const cplx gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
                // Columns: A <- A G, V <- V G
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * gpp + aiq * gqp;
                    a(i, q) = aip * gpq + aiq * gqq;
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * gpp + viq * gqp;
                    v(i, q) = vip * gpq + viq * gqq;
                }
                // Rows: A <- G^dagger A
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
                    a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
                }
                a(p, q) = a(q, p) = 0;
                a(p, p) = cplx(a(p, p).real(), 0);
                a(q, q) = cplx(a(q, q).real(), 0);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t k : order) {
        out.eigenvalues.push_back(a(k, k).real());
        std::vector<cplx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
        canonical_phase(col);
        out.eigenvectors.push_back(Ket(std::move(col)));
    }
    return out;
}

SchmidtDecomposition schmidt_decompose(const Ket& psi, std::size_t dim_a, std::size_t dim_b) {
    if (dim_a * dim_b != psi.dim() || dim_a == 0 || dim_b == 0)
        throw std::invalid_argument("incompatible factorization");

    // Reshape amplitudes into M with M(i,j) = <ij|psi>.
    ComplexMatrix m(dim_a, dim_b);
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_b; ++j)
            m(i, j) = psi[i * dim_b + j];

    EigenDecomposition eig = eig_hermitian(m * m.dagger());

    const std::size_t r = std::min(dim_a, dim_b);
    SchmidtDecomposition out;
    for (std::size_t k = 0; k < r; ++k) {
        double p = eig.eigenvalues[k];
        if (p < 1e-12) p = 0;
        out.coefficients.push_back(std::sqrt(p));
        out.basis_a.push_back(eig.eigenvectors[k]);
        if (p > 0) {
            // b_k(j) = sum_i conj(a_k(i)) M(i,j) / sqrt(p); reconstruction
            // psi = sum sqrt(p) a_k (x) b_k then holds exactly.
            std::vector<cplx> b(dim_b);
            for (std::size_t j = 0; j < dim_b; ++j) {
                cplx s = 0;
                for (std::size_t i = 0; i < dim_a; ++i)
                    s += std::conj(eig.eigenvectors[k][i]) * m(i, j);
                b[j] = s / std::sqrt(p);
            }
            out.basis_b.push_back(Ket(std::move(b)));
        } else {
            // Complete with any unit vector orthogonal to the ones found so far.
            for (std::size_t cand = 0; cand < dim_b; ++cand) {
                std::vector<cplx> b(dim_b);
                b[cand] = 1.0;
                for (const Ket& prev : out.basis_b) {
                    const cplx ov = std::inner_product(
                        prev.amplitudes().begin(), prev.amplitudes().end(), b.begin(), cplx{},
                        std::plus<>(), [](const cplx& x, const cplx& y) { return std::conj(x) * y; });
                    for (std::size_t j = 0; j < dim_b; ++j) b[j] -= ov * prev[j];
                }
                double n2 = 0;
                for (const cplx& z : b) n2 += std::norm(z);
                if (n2 > 1e-6) {
                    out.basis_b.push_back(Ket(std::move(b)));
                    break;
                }
            }
        }
    }
    return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    EigenDecomposition eig = eig_hermitian(m);
    const std::size_t n = m.rows();
    ComplexMatrix s(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double lambda = eig.eigenvalues[k];
        if (lambda < -1e-10) throw std::domain_error("matrix is not positive semidefinite");
        if (lambda < 0) lambda = 0;
        const double root = std::sqrt(lambda);
        if (root == 0) continue;
        const Ket& v = eig.eigenvectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s(i, j) += root * v[i] * std::conj(v[j]);
    }
    return s;
}

}  // namespace qinfo
