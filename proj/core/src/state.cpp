#include "qinfo/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qinfo {

namespace {

constexpr double kZeroProb = 1e-12;

ComplexMatrix from_spectrum(const EigenDecomposition& eig, const std::vector<double>& vals) {
    const std::size_t n = eig.eigenvectors.size();
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (vals[k] == 0) continue;
        const Ket& v = eig.eigenvectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) += vals[k] * v[i] * std::conj(v[j]);
    }
    return m;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("density operator must be square");
    if (!matrix_.is_hermitian(kAlgebraicTol))
        throw std::invalid_argument("density operator must be Hermitian");
    if (std::abs(matrix_.trace() - cplx{1.0}) > kAlgebraicTol)
        throw std::invalid_argument("density operator must have unit trace");

    EigenDecomposition eig = eig_hermitian(matrix_);
    bool clamped = false;
    double total = 0;
    std::vector<double> vals = eig.eigenvalues;
    for (double& v : vals) {
        if (v < -kAlgebraicTol) throw std::invalid_argument("density operator must be positive");
        if (v < 0) { v = 0; clamped = true; }
        total += v;
    }
    if (clamped) {
        for (double& v : vals) v /= total;
        matrix_ = from_spectrum(eig, vals);
    }
}

DensityOperator DensityOperator::pure(const Ket& psi) { return DensityOperator(psi.projector()); }

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    return DensityOperator(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

Ensemble::Ensemble(std::vector<double> w, std::vector<DensityOperator> m)
    : weights(std::move(w)), members(std::move(m)) {
    if (weights.size() != members.size() || weights.empty())
        throw std::invalid_argument("ensemble weights/members mismatch");
    double sum = 0;
    for (double x : weights) {
        if (x < 0) throw std::invalid_argument("negative ensemble weight");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kAlgebraicTol)
        throw std::invalid_argument("ensemble weights must sum to 1");
    for (const DensityOperator& rho : members)
        if (rho.dim() != members.front().dim())
            throw std::invalid_argument("ensemble members must share a dimension");
}

Ensemble Ensemble::of_pure(const std::vector<double>& weights, const std::vector<Ket>& states) {
    std::vector<DensityOperator> members;
    members.reserve(states.size());
    for (const Ket& psi : states) members.push_back(DensityOperator::pure(psi));
    return Ensemble(weights, std::move(members));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, bool tp)
    : operators(std::move(ops)), trace_preserving(tp) {
    if (operators.empty()) throw std::invalid_argument("empty Kraus channel");
    const std::size_t in = operators.front().cols();
    const std::size_t out = operators.front().rows();
    ComplexMatrix sum(in, in);
    for (const ComplexMatrix& m : operators) {
        if (m.cols() != in || m.rows() != out)
            throw std::invalid_argument("Kraus operators must share dimensions");
        sum = sum + m.dagger() * m;
    }
    if (trace_preserving) {
        ComplexMatrix diff = sum - ComplexMatrix::identity(in);
        if (diff.max_abs() > 100 * kAlgebraicTol)
            throw std::invalid_argument("Kraus operators do not satisfy completeness");
    } else {
        EigenDecomposition eig = eig_hermitian(ComplexMatrix::identity(in) - sum);
        for (double v : eig.eigenvalues)
            if (v < -kAlgebraicTol)
                throw std::invalid_argument("Kraus operators exceed completeness bound");
    }
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
    if (!u.is_unitary(100 * kAlgebraicTol)) throw std::invalid_argument("matrix is not unitary");
    return KrausChannel({u}, true);
}

KrausChannel KrausChannel::projective(const std::vector<ComplexMatrix>& projectors) {
    return KrausChannel(projectors, true);
}

Povm::Povm(std::vector<ComplexMatrix> fx) : effects(std::move(fx)) {
    if (effects.empty()) throw std::invalid_argument("empty POVM");
    const std::size_t d = effects.front().rows();
    ComplexMatrix sum(d, d);
    for (const ComplexMatrix& e : effects) {
        if (e.rows() != d || e.cols() != d)
            throw std::invalid_argument("POVM effects must share a dimension");
        EigenDecomposition eig = eig_hermitian(e);
        for (double v : eig.eigenvalues)
            if (v < -kAlgebraicTol) throw std::invalid_argument("POVM effect is not positive");
        sum = sum + e;
    }
    if ((sum - ComplexMatrix::identity(d)).max_abs() > 100 * kAlgebraicTol)
        throw std::invalid_argument("POVM effects do not sum to identity");
}

DensityOperator density_from_ensemble(const Ensemble& e) {
    const std::size_t d = e.members.front().dim();
    ComplexMatrix sum(d, d);
    for (std::size_t i = 0; i < e.weights.size(); ++i)
        sum = sum + e.members[i].matrix() * cplx(e.weights[i]);
    return DensityOperator(std::move(sum));
}

Ket purify(const DensityOperator& rho) {
    const std::size_t d = rho.dim();
    EigenDecomposition eig = eig_hermitian(rho.matrix());
    std::vector<cplx> amps(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        const double p = std::max(eig.eigenvalues[k], 0.0);
        if (p < kZeroProb) continue;
        const double root = std::sqrt(p);
        for (std::size_t j = 0; j < d; ++j) amps[j * d + k] += root * eig.eigenvectors[k][j];
    }
    return Ket(std::move(amps));
}

double fidelity_pure(const DensityOperator& rho, const Ket& psi) {
    if (rho.dim() != psi.dim()) throw std::invalid_argument("dimension mismatch");
    cplx f = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j)
            f += std::conj(psi[i]) * rho.matrix()(i, j) * psi[j];
    return std::clamp(f.real(), 0.0, 1.0);
}

double fidelity_mixed(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("dimension mismatch");
    const ComplexMatrix root = matrix_sqrt_psd(rho.matrix());
    const ComplexMatrix inner = root * sigma.matrix() * root;
    EigenDecomposition eig = eig_hermitian(inner);
    double tr = 0;
    for (double v : eig.eigenvalues) tr += std::sqrt(std::max(v, 0.0));
    return std::clamp(tr * tr, 0.0, 1.0);
}

std::vector<double> outcome_distribution(const DensityOperator& rho, const KrausChannel& channel) {
    if (channel.operators.front().cols() != rho.dim())
        throw std::invalid_argument("dimension mismatch");
    std::vector<double> probs;
    probs.reserve(channel.operators.size());
    for (const ComplexMatrix& m : channel.operators)
        probs.push_back(std::max((m * rho.matrix() * m.dagger()).trace().real(), 0.0));
    return probs;
}

MeasurementRecord measure(const DensityOperator& rho, const KrausChannel& channel,
                          std::size_t outcome) {
    if (outcome >= channel.operators.size()) throw std::out_of_range("outcome index out of range");
    const ComplexMatrix& m = channel.operators[outcome];
    if (m.cols() != rho.dim()) throw std::invalid_argument("dimension mismatch");
    ComplexMatrix post = m * rho.matrix() * m.dagger();
    const double p = post.trace().real();
    if (p < kZeroProb)
        throw std::runtime_error("outcome has probability below tolerance");
    return {outcome, p, DensityOperator(post * cplx(1.0 / p))};
}

MeasurementRecord measure(const DensityOperator& rho, const KrausChannel& channel, Rng& rng) {
    const std::vector<double> probs = outcome_distribution(rho, channel);
    return measure(rho, channel, rng.sample(probs));
}

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& channel) {
    if (!channel.trace_preserving)
        throw std::invalid_argument("channel is not trace preserving; use measure instead");
    if (channel.operators.front().cols() != rho.dim())
        throw std::invalid_argument("dimension mismatch");
    const std::size_t d = channel.operators.front().rows();
    ComplexMatrix sum(d, d);
    for (const ComplexMatrix& m : channel.operators)
        sum = sum + m * rho.matrix() * m.dagger();
    return DensityOperator(std::move(sum));
}

KrausChannel povm_to_kraus(const Povm& p) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(p.effects.size());
    for (const ComplexMatrix& e : p.effects) ops.push_back(matrix_sqrt_psd(e));
    return KrausChannel(std::move(ops), true);
}

Povm unambiguous_discrimination_povm() {
    const double c = std::sqrt(2.0) / (1.0 + std::sqrt(2.0));
    const Ket minus({1.0, -1.0});
    ComplexMatrix e1 = minus.projector() * cplx(c);
    ComplexMatrix e2 = Ket::basis(2, 1).projector() * cplx(c);
    ComplexMatrix e3 = ComplexMatrix::identity(2) - e1 - e2;
    return Povm({e1, e2, e3});
}

Ensemble steer(const Ket& bipartite, std::size_t dim_a, const std::vector<Ket>& alice_basis) {
    if (bipartite.dim() % dim_a != 0) throw std::invalid_argument("incompatible factorization");
    const std::size_t dim_b = bipartite.dim() / dim_a;
    if (alice_basis.size() != dim_a) throw std::invalid_argument("non-orthonormal basis");
    for (std::size_t i = 0; i < dim_a; ++i) {
        if (alice_basis[i].dim() != dim_a) throw std::invalid_argument("non-orthonormal basis");
        for (std::size_t j = 0; j < dim_a; ++j) {
            const cplx ov = alice_basis[i].inner(alice_basis[j]);
            const cplx want = (i == j) ? cplx{1.0} : cplx{};
            if (std::abs(ov - want) > kIterativeTol)
                throw std::invalid_argument("non-orthonormal basis");
        }
    }

    std::vector<double> weights;
    std::vector<DensityOperator> members;
    for (const Ket& a : alice_basis) {
        // (<a| (x) I) |psi>
        std::vector<cplx> cond(dim_b);
        double p = 0;
        for (std::size_t j = 0; j < dim_b; ++j) {
            cplx s = 0;
            for (std::size_t i = 0; i < dim_a; ++i) s += std::conj(a[i]) * bipartite[i * dim_b + j];
            cond[j] = s;
            p += std::norm(s);
        }
        if (p < kZeroProb) continue;
        weights.push_back(p);
        members.push_back(DensityOperator::pure(Ket(std::move(cond))));
    }
    double total = 0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    return Ensemble(std::move(weights), std::move(members));
}

}  // namespace qinfo
