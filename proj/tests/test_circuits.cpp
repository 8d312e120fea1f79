#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qinfo/circuits.hpp"

using namespace qinfo;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

BooleanOracle simon_oracle(std::size_t n, std::uint64_t period) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint64_t> table(size);
    for (std::size_t x = 0; x < size; ++x)
        table[x] = period == 0 ? x : std::min<std::uint64_t>(x, x ^ period);
    return BooleanOracle(n, n, std::move(table));
}

BooleanOracle balanced_oracle(std::size_t n, Rng& rng) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint64_t> table(size);
    for (std::size_t i = 0; i < size / 2; ++i) table[i] = 1;
    for (std::size_t i = size - 1; i > 0; --i)
        std::swap(table[i], table[rng.next_below(i + 1)]);
    return BooleanOracle(n, 1, std::move(table));
}

}  // namespace

TEST_CASE("basic circuit evolution") {
    // H|0> = |+>.
    const Ket plus = run_circuit({1, {Gate::h(0)}}, Ket::basis(2, 0));
    CHECK(std::abs(plus[0] - kR) < 1e-12);
    CHECK(std::abs(plus[1] - kR) < 1e-12);

    // Qubit 0 is the most significant factor: X on qubit 0 flips the MSB.
    const Ket flipped = run_circuit({2, {Gate::x(0)}}, Ket::basis(4, 0));
    CHECK(std::abs(flipped[2] - 1.0) < 1e-12);

    // H then CNOT makes the Bell state.
    const Ket bell = run_circuit({2, {Gate::h(0), Gate::cnot(0, 1)}}, Ket::basis(4, 0));
    CHECK(std::abs(bell[0] - kR) < 1e-12);
    CHECK(std::abs(bell[3] - kR) < 1e-12);

    // S then S equals Z.
    const Ket via_s = run_circuit({1, {Gate::h(0), Gate::s(0), Gate::s(0)}}, Ket::basis(2, 0));
    const Ket via_z = run_circuit({1, {Gate::h(0), Gate::z(0)}}, Ket::basis(2, 0));
    for (int i = 0; i < 2; ++i) CHECK(std::abs(via_s[i] - via_z[i]) < 1e-12);
}

TEST_CASE("custom gates embed like explicit tensor constructions") {
    Rng rng(6);
    // Random 3-qubit basis state, CNOT as a custom 4x4 unitary on {2, 0}.
    ComplexMatrix cnot(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    for (std::size_t input = 0; input < 8; ++input) {
        const Ket in = Ket::basis(8, input);
        const Ket got = run_circuit({3, {Gate::custom_unitary(cnot, {2, 0})}}, in);
        // Oracle: control is bit 2 (LSB), target bit 0 (MSB).
        const std::size_t control = input & 1, target = (input >> 2) & 1;
        const std::size_t expect = control ? input ^ 4 : input;
        (void)target;
        CHECK(std::abs(got[expect] - 1.0) < 1e-12);
    }
    (void)rng;
}

TEST_CASE("oracle unitaries permute basis states correctly") {
    const BooleanOracle f(2, 1, {0, 1, 1, 0});  // XOR
    const ComplexMatrix u = oracle_unitary(f);
    CHECK(u.is_unitary());
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
            const std::size_t in = x * 2 + y;
            const std::size_t out = x * 2 + (y ^ f.table[x]);
            CHECK(std::abs(u(out, in) - 1.0) < 1e-12);
        }
}

TEST_CASE("deutsch on all four one-bit functions") {
    CHECK(deutsch_decide(BooleanOracle(1, 1, {0, 0})) == OracleVerdict::Constant);
    CHECK(deutsch_decide(BooleanOracle(1, 1, {1, 1})) == OracleVerdict::Constant);
    CHECK(deutsch_decide(BooleanOracle(1, 1, {0, 1})) == OracleVerdict::Balanced);
    CHECK(deutsch_decide(BooleanOracle(1, 1, {1, 0})) == OracleVerdict::Balanced);
}

TEST_CASE("deutsch-jozsa") {
    CHECK(deutsch_jozsa_decide(BooleanOracle(2, 1, {1, 1, 1, 1})) == OracleVerdict::Constant);
    // f(x) = x0 (MSB of the input register) is balanced.
    CHECK(deutsch_jozsa_decide(BooleanOracle(2, 1, {0, 0, 1, 1})) == OracleVerdict::Balanced);
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.next_below(5);
        CHECK(deutsch_jozsa_decide(balanced_oracle(n, rng)) == OracleVerdict::Balanced);
        const std::uint64_t c = rng.next_below(2);
        CHECK(deutsch_jozsa_decide(
                  BooleanOracle(n, 1, std::vector<std::uint64_t>(std::size_t{1} << n, c))) ==
              OracleVerdict::Constant);
    }
}

TEST_CASE("simon sampling distribution is uniform on the orthogonal subspace") {
    const std::size_t n = 3;
    const std::uint64_t s = 5;
    const std::vector<double> dist = simon_sample_distribution(simon_oracle(n, s));
    for (std::uint64_t y = 0; y < 8; ++y) {
        const bool orthogonal = __builtin_parityll(y & s) == 0;
        if (orthogonal)
            CHECK(dist[y] == doctest::Approx(0.25));
        else
            CHECK(dist[y] == doctest::Approx(0.0));
    }
}

TEST_CASE("simon recovers every period") {
    for (std::uint64_t s = 1; s < 8; ++s) {
        Rng rng(100 + s);
        CHECK(simon_find_period(simon_oracle(3, s), rng) == s);
    }
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.next_below(5);
        const std::uint64_t s = 1 + rng.next_below((std::size_t{1} << n) - 1);
        CHECK(simon_find_period(simon_oracle(n, s), rng) == s);
    }
}

TEST_CASE("gf2 nullspace solver") {
    // Rows orthogonal to s = 101b in 3 bits: y in {000, 010, 101, 111}.
    CHECK(gf2_solve(Gf2System{{0b010, 0b101, 0b111}}, 3) == std::uint64_t{5});
    // Rank-deficient system has no unique solution.
    CHECK(!gf2_solve(Gf2System{{0b010}}, 3).has_value());
}

TEST_CASE("discrete fourier transform") {
    const ComplexMatrix f = dft_mod_s(8);
    CHECK(f.is_unitary(1e-10));
    CHECK(std::abs(f(0, 0) - cplx(1 / std::sqrt(8.0), 0.0)) < 1e-12);
}

TEST_CASE("modular arithmetic helpers") {
    CHECK(pow_mod(7, 4, 15) == 1);
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(gcd_u64(12, 18) == 6);
    CHECK(gcd_u64(17, 5) == 1);
}

TEST_CASE("order-finding distribution for N=15, a=7, s=64") {
    const std::vector<double> dist = shor_order_distribution(15, 7, 64);
    // Order r = 4 divides s, so the distribution concentrates exactly on
    // multiples of s/r = 16, each with probability 1/4.
    for (std::size_t c = 0; c < 64; ++c) {
        if (c % 16 == 0)
            CHECK(std::abs(dist[c] - 0.25) < 1e-10);
        else
            CHECK(dist[c] < 1e-10);
    }
}

TEST_CASE("shor factoring") {
    Rng rng(8);
    const ShorRunReport rep = shor_factor(15, 64, rng, 20, 7);
    REQUIRE(rep.factors.has_value());
    CHECK(rep.factors->first == 3);
    CHECK(rep.factors->second == 5);
    // Success requires a verified even period, so the winner is the order 4;
    // unlucky samples like c=32 (candidate 2, not a period of 7) are redrawn.
    CHECK(rep.candidate_r == 4);
    for (std::uint64_t sample : rep.samples) CHECK(sample % 16 == 0);

    // a = 14 has order 2 with 14^1 = -1 mod 15: rejected, no factors.
    Rng rng2(8);
    const ShorRunReport bad = shor_factor(15, 64, rng2, 3, 14);
    CHECK(!bad.factors.has_value());

    // Randomized runs factor 15 and 21.
    Rng rng3(9);
    const ShorRunReport r15 = shor_factor(15, 64, rng3, 20);
    REQUIRE(r15.factors.has_value());
    CHECK(r15.factors->first * r15.factors->second == 15);
    const ShorRunReport r21 = shor_factor(21, 504, rng3, 20);
    REQUIRE(r21.factors.has_value());
    CHECK(r21.factors->first * r21.factors->second == 21);

    // Input validation: even, prime, and prime-power moduli are rejected.
    CHECK_THROWS_AS(shor_factor(16, 64, rng3, 5), std::invalid_argument);
    CHECK_THROWS_AS(shor_factor(17, 64, rng3, 5), std::invalid_argument);
    CHECK_THROWS_AS(shor_factor(27, 64, rng3, 5), std::invalid_argument);
}
