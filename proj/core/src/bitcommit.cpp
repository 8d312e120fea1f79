#include "qinfo/bitcommit.hpp"

#include <cmath>
#include <stdexcept>

namespace qinfo {

namespace {

// Orthonormal complement completion: extend `chosen` to a full orthonormal
// basis of C^dim by Gram-Schmidt over the standard basis.
std::vector<Ket> complete_basis(const std::vector<Ket>& chosen, std::size_t dim) {
    std::vector<Ket> extra;
    for (std::size_t cand = 0; cand < dim && chosen.size() + extra.size() < dim; ++cand) {
        std::vector<cplx> v(dim);
        v[cand] = 1.0;
        const auto subtract = [&](const Ket& prev) {
            cplx ov = 0;
            for (std::size_t i = 0; i < dim; ++i) ov += std::conj(prev[i]) * v[i];
            for (std::size_t i = 0; i < dim; ++i) v[i] -= ov * prev[i];
        };
        for (const Ket& p : chosen) subtract(p);
        for (const Ket& p : extra) subtract(p);
        double n2 = 0;
        for (const cplx& z : v) n2 += std::norm(z);
        if (n2 > 1e-6) extra.push_back(Ket(std::move(v)));
    }
    if (chosen.size() + extra.size() != dim)
        throw std::logic_error("basis completion failed");
    return extra;
}

void validate_pair(const CommitmentPair& pair) {
    if (pair.dim_a == 0 || pair.dim_b == 0 ||
        pair.state0.dim() != pair.dim_a * pair.dim_b ||
        pair.state1.dim() != pair.dim_a * pair.dim_b)
        throw std::invalid_argument("incompatible factorization");
}

ComplexMatrix bob_marginal(const Ket& state, std::size_t dim_a, std::size_t dim_b) {
    return partial_trace(state.projector(), {dim_a, dim_b}, {1});
}

}  // namespace

PeresConstruction peres_construction() {
    const double h = 0.5, s3 = std::sqrt(3.0) / 2.0;
    PeresConstruction p;
    // Even states: the trine {c0, c2, c4}; odd states: the rotated trine.
    p.c_states = {
        Ket({1.0, 0.0}),  Ket({0.0, 1.0}),
        Ket({-h, s3}),    Ket({s3, -h}),
        Ket({-h, -s3}),   Ket({-s3, -h}),
    };
    p.a_basis = {Ket::basis(3, 0), Ket::basis(3, 1), Ket::basis(3, 2)};

    const double u = (1.0 + std::sqrt(3.0)) / 3.0;
    const double v = (1.0 - std::sqrt(3.0)) / 3.0;
    const double w = 1.0 / 3.0;
    p.a_doubleprime_basis = {
        Ket({w, u, v}),
        Ket({u, v, w}),
        Ket({v, w, u}),
    };

    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    std::vector<cplx> amps(6, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            amps[i * 2 + j] = inv_sqrt3 * p.c_states[2 * i][j];
    p.entangled0 = Ket(std::move(amps));

    // Self-checks: both ensembles average to I/2, the rotated basis is
    // orthonormal, and both product expansions give entangled0.
    for (int parity = 0; parity < 2; ++parity) {
        ComplexMatrix avg(2, 2);
        for (std::size_t i = 0; i < 3; ++i)
            avg = avg + p.c_states[2 * i + parity].projector() * cplx(1.0 / 3.0);
        if ((avg - ComplexMatrix::identity(2) * cplx(0.5)).max_abs() > kAlgebraicTol)
            throw std::logic_error("trine ensemble is not maximally mixed");
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const cplx g = p.a_doubleprime_basis[i].inner(p.a_doubleprime_basis[j]);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > kAlgebraicTol)
                throw std::logic_error("rotated ancilla basis is not orthonormal");
        }
    std::vector<cplx> alt(6, 0.0);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                alt[i * 2 + j] +=
                    inv_sqrt3 * p.a_doubleprime_basis[k][i] * p.c_states[2 * k + 1][j];
    for (std::size_t i = 0; i < 6; ++i)
        if (std::abs(alt[i] - p.entangled0[i]) > kAlgebraicTol)
            throw std::logic_error("rotated expansion does not reproduce the entangled state");
    return p;
}

CommitmentPair peres_commitment_pair() {
    const PeresConstruction p = peres_construction();
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    std::vector<cplx> amps(6, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            amps[i * 2 + j] = inv_sqrt3 * p.c_states[2 * i + 1][j];
    return {p.entangled0, Ket(std::move(amps)), 3, 2};
}

HonestCommitment honest_commit(int bit, Rng& rng) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    const PeresConstruction p = peres_construction();
    const std::size_t index = 2 * rng.next_below(3) + static_cast<std::size_t>(bit);
    return {p.c_states[index], index};
}

CheatOpening cheat_open(int bit, Rng& rng) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    const PeresConstruction p = peres_construction();
    const std::vector<Ket>& basis = bit == 0 ? p.a_basis : p.a_doubleprime_basis;

    std::vector<double> probs(3);
    std::vector<std::vector<cplx>> cond(3, std::vector<cplx>(2));
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t j = 0; j < 2; ++j) {
            cplx amp = 0;
            for (std::size_t i = 0; i < 3; ++i)
                amp += std::conj(basis[k][i]) * p.entangled0[i * 2 + j];
            cond[k][j] = amp;
            probs[k] += std::norm(amp);
        }
    }
    const std::size_t k = rng.sample(probs);
    return {2 * k + static_cast<std::size_t>(bit), Ket(cond[k])};
}

double concealment_check(const CommitmentPair& pair) {
    validate_pair(pair);
    return (bob_marginal(pair.state0, pair.dim_a, pair.dim_b) -
            bob_marginal(pair.state1, pair.dim_a, pair.dim_b))
        .max_abs();
}

ComplexMatrix cheating_unitary(const CommitmentPair& pair) {
    validate_pair(pair);
    if (concealment_check(pair) > kIterativeTol)
        throw std::runtime_error("protocol not concealing: Bob marginals differ");

    const SchmidtDecomposition s0 = schmidt_decompose(pair.state0, pair.dim_a, pair.dim_b);
    const SchmidtDecomposition s1 = schmidt_decompose(pair.state1, pair.dim_a, pair.dim_b);

    std::size_t rank = 0;
    while (rank < s0.coefficients.size() && s0.coefficients[rank] > 1e-7) ++rank;

    // Walk eigenvalue-degenerate blocks; inside each block find the Alice-side
    // combinations of state0's basis that carry state1's Bob vectors.
    std::vector<Ket> left, right;  // U maps left[k] -> right[k]
    std::size_t start = 0;
    while (start < rank) {
        std::size_t end = start + 1;
        const double p0 = s0.coefficients[start] * s0.coefficients[start];
        while (end < rank) {
            const double pe = s0.coefficients[end] * s0.coefficients[end];
            if (p0 - pe > kIterativeTol) break;
            ++end;
        }
        for (std::size_t j = start; j < end; ++j) {
            std::vector<cplx> combo(pair.dim_a, 0.0);
            for (std::size_t i = start; i < end; ++i) {
                const cplx c = s1.basis_b[j].inner(s0.basis_b[i]);
                for (std::size_t a = 0; a < pair.dim_a; ++a) combo[a] += c * s0.basis_a[i][a];
            }
            left.push_back(Ket(std::move(combo)));
            right.push_back(s1.basis_a[j]);
        }
        start = end;
    }

    const std::vector<Ket> left_extra = complete_basis(left, pair.dim_a);
    const std::vector<Ket> right_extra = complete_basis(right, pair.dim_a);
    left.insert(left.end(), left_extra.begin(), left_extra.end());
    right.insert(right.end(), right_extra.begin(), right_extra.end());

    ComplexMatrix u(pair.dim_a, pair.dim_a);
    for (std::size_t k = 0; k < pair.dim_a; ++k)
        for (std::size_t r = 0; r < pair.dim_a; ++r)
            for (std::size_t c = 0; c < pair.dim_a; ++c)
                u(r, c) += right[k][r] * std::conj(left[k][c]);

    // Global phase: largest-magnitude entry of the first column real positive.
    std::size_t arg = 0;
    for (std::size_t r = 1; r < pair.dim_a; ++r)
        if (std::abs(u(r, 0)) > std::abs(u(arg, 0))) arg = r;
    const double mag = std::abs(u(arg, 0));
    if (mag > 1e-12) {
        const cplx ph = std::conj(u(arg, 0)) / mag;
        u = u * ph;
    }
    return u;
}

}  // namespace qinfo
