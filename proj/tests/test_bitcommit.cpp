#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qinfo/bitcommit.hpp"

using namespace qinfo;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

Ket random_ket(std::size_t dim, Rng& rng) {
    std::vector<cplx> amps(dim);
    for (auto& a : amps) a = cplx(2 * rng.next_double() - 1, 2 * rng.next_double() - 1);
    return Ket(std::move(amps));
}

// Random unitary via Gram-Schmidt on random columns.
ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    std::vector<Ket> cols;
    while (cols.size() < n) {
        std::vector<cplx> v = random_ket(n, rng).amplitudes();
        for (const Ket& prev : cols) {
            cplx ov = 0;
            for (std::size_t i = 0; i < n; ++i) ov += std::conj(prev[i]) * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= ov * prev[i];
        }
        double n2 = 0;
        for (const cplx& z : v) n2 += std::norm(z);
        if (n2 > 1e-6) cols.push_back(Ket(std::move(v)));
    }
    ComplexMatrix u(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = cols[c][r];
    return u;
}

double roundtrip_error(const CommitmentPair& pair, const ComplexMatrix& u) {
    const Ket mapped = Ket(apply(tensor(u, ComplexMatrix::identity(pair.dim_b)), pair.state0));
    return 1.0 - std::norm(mapped.inner(pair.state1));
}

}  // namespace

TEST_CASE("trine construction invariants") {
    const PeresConstruction p = peres_construction();
    REQUIRE(p.c_states.size() == 6);

    // Both three-state ensembles average to I/2.
    for (int parity = 0; parity < 2; ++parity) {
        ComplexMatrix avg(2, 2);
        for (int i = 0; i < 3; ++i)
            avg = avg + p.c_states[2 * i + parity].projector() * cplx(1.0 / 3.0);
        CHECK((avg - ComplexMatrix::identity(2) * cplx(0.5)).max_abs() < 1e-10);
    }

    // The rotated ancilla basis has the displayed coefficients and is orthonormal.
    const double u = (1 + std::sqrt(3.0)) / 3.0, v = (1 - std::sqrt(3.0)) / 3.0;
    CHECK(std::abs(p.a_doubleprime_basis[0][0] - cplx(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(p.a_doubleprime_basis[0][1] - cplx(u)) < 1e-12);
    CHECK(std::abs(p.a_doubleprime_basis[0][2] - cplx(v)) < 1e-12);
    CHECK(std::abs(p.a_doubleprime_basis[0].inner(p.a_doubleprime_basis[1])) < 1e-10);

    // Both product expansions give the same entangled state.
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            cplx direct = p.a_basis[i][i] * p.c_states[2 * i][j] / std::sqrt(3.0);
            CHECK(std::abs(p.entangled0[i * 2 + j] - direct) < 1e-10);
        }
}

TEST_CASE("honest commitments") {
    Rng rng(1);
    const PeresConstruction p = peres_construction();
    // Single runs land exactly on a listed state of the right parity.
    for (int bit = 0; bit < 2; ++bit) {
        const HonestCommitment h = honest_commit(bit, rng);
        CHECK(h.secret_index % 2 == static_cast<std::size_t>(bit));
        CHECK(std::norm(p.c_states[h.secret_index].inner(h.channel_state)) >
              1.0 - 1e-12);
    }
    // The empirical Bob-side density converges to I/2.
    for (int bit = 0; bit < 2; ++bit) {
        ComplexMatrix avg(2, 2);
        const std::size_t trials = 30000;
        for (std::size_t i = 0; i < trials; ++i)
            avg = avg + honest_commit(bit, rng).channel_state.projector() * cplx(1.0 / trials);
        CHECK((avg - ComplexMatrix::identity(2) * cplx(0.5)).max_abs() < 0.02);
    }
    CHECK_THROWS_AS(honest_commit(2, rng), std::invalid_argument);
}

TEST_CASE("cheating reproduces the honest ensembles") {
    Rng rng(2);
    const PeresConstruction p = peres_construction();
    std::vector<std::size_t> counts(6, 0);
    const std::size_t trials = 10000;
    for (std::size_t i = 0; i < trials; ++i) {
        const int bit = static_cast<int>(i % 2);
        const CheatOpening open = cheat_open(bit, rng);
        CHECK(open.outcome_index % 2 == static_cast<std::size_t>(bit));
        // Conditional state is exactly the matching honest state.
        CHECK(std::norm(p.c_states[open.outcome_index].inner(open.bob_state)) >
              1.0 - 1e-10);
        ++counts[open.outcome_index];
    }
    // Each basis outcome is uniform at 1/3 (3-sigma band around 1/6 of trials).
    for (std::size_t c : counts) {
        const double rate = static_cast<double>(c) / trials;
        CHECK(std::abs(rate - 1.0 / 6.0) < 3 * std::sqrt((1.0 / 6) * (5.0 / 6) / (trials / 2.0)));
    }
}

TEST_CASE("concealment check") {
    CHECK(concealment_check(peres_commitment_pair()) < 1e-10);
    // |00> vs |01>: orthogonal Bob marginals.
    CHECK(concealment_check({Ket::basis(4, 0), Ket::basis(4, 1), 2, 2}) ==
          doctest::Approx(1.0));
    Rng rng(3);
    const Ket psi = random_ket(6, rng);
    CHECK(concealment_check({psi, psi, 2, 3}) < 1e-12);
}

TEST_CASE("cheating unitary on the worked example") {
    const CommitmentPair pair = peres_commitment_pair();
    const ComplexMatrix u = cheating_unitary(pair);
    CHECK(u.is_unitary(1e-8));
    CHECK(roundtrip_error(pair, u) < 1e-8);
    // Deterministic phase convention: largest first-column entry real positive.
    std::size_t arg = 0;
    for (std::size_t r = 1; r < 3; ++r)
        if (std::abs(u(r, 0)) > std::abs(u(arg, 0))) arg = r;
    CHECK(u(arg, 0).imag() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(u(arg, 0).real() > 0.0);
}

TEST_CASE("cheating unitary handles schmidt degeneracy") {
    // Two maximally entangled 2x2 states share the Bob marginal I/2.
    const CommitmentPair pair{Ket({kR, 0.0, 0.0, kR}), Ket({0.0, kR, kR, 0.0}), 2, 2};
    const ComplexMatrix u = cheating_unitary(pair);
    CHECK(u.is_unitary(1e-8));
    CHECK(roundtrip_error(pair, u) < 1e-8);
}

TEST_CASE("non-concealing pairs are rejected") {
    CHECK_THROWS_WITH(cheating_unitary({Ket::basis(4, 0), Ket::basis(4, 3), 2, 2}),
                      "protocol not concealing: Bob marginals differ");
}

TEST_CASE("concealment implies a cheating unitary on random pairs") {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t da = 2 + rng.next_below(2), db = 2 + rng.next_below(2);
        const Ket base = random_ket(da * db, rng);
        // state1 differs by an Alice-side unitary, so marginals agree exactly.
        const ComplexMatrix w = random_unitary(da, rng);
        const Ket other = Ket(apply(tensor(w, ComplexMatrix::identity(db)), base));
        const CommitmentPair pair{base, other, da, db};
        REQUIRE(concealment_check(pair) < 1e-8);
        const ComplexMatrix u = cheating_unitary(pair);
        CHECK(u.is_unitary(1e-8));
        CHECK(roundtrip_error(pair, u) < 1e-8);
    }
}

TEST_CASE("cheat outcomes are indistinguishable from honest ones") {
    Rng rng(5);
    const std::size_t trials = 10000;
    // Bob measures in the trine basis {c0, c2, c4} scaled into a POVM; compare
    // outcome frequencies for honest vs cheating commitments of bit 0.
    const PeresConstruction p = peres_construction();
    std::vector<ComplexMatrix> effects;
    for (int i = 0; i < 3; ++i)
        effects.push_back(p.c_states[2 * i].projector() * cplx(2.0 / 3.0));
    const Povm trine(effects);
    const KrausChannel k = povm_to_kraus(trine);

    std::vector<std::size_t> honest_counts(3, 0), cheat_counts(3, 0);
    for (std::size_t i = 0; i < trials; ++i) {
        const DensityOperator h = DensityOperator::pure(honest_commit(0, rng).channel_state);
        ++honest_counts[measure(h, k, rng).outcome];
        const DensityOperator c = DensityOperator::pure(cheat_open(0, rng).bob_state);
        ++cheat_counts[measure(c, k, rng).outcome];
    }
    for (int o = 0; o < 3; ++o) {
        const double ph = static_cast<double>(honest_counts[o]) / trials;
        const double pc = static_cast<double>(cheat_counts[o]) / trials;
        CHECK(std::abs(ph - pc) < 3 * std::sqrt(2 * 0.25 / trials) + 0.02);
    }
}
