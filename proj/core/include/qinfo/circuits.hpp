// Gate-level pure-state simulator and the canonical oracle algorithms with
// their classical post-processing.  Qubit 0 is the most significant tensor
// factor: |b0 b1 ... b_{n-1}> has basis index sum b_i * 2^(n-1-i).

#pragma once

#include <cstdint>
#include <optional>

#include "qinfo/matrix.hpp"
#include "qinfo/rng.hpp"

namespace qinfo {

enum class GateKind { H, X, Y, Z, S, T, CNOT, Custom };

struct Gate {
    GateKind kind;
    std::vector<std::size_t> targets;   // CNOT: {control, target}
    ComplexMatrix custom;               // used when kind == Custom

    static Gate h(std::size_t q) { return {GateKind::H, {q}, {}}; }
    static Gate x(std::size_t q) { return {GateKind::X, {q}, {}}; }
    static Gate y(std::size_t q) { return {GateKind::Y, {q}, {}}; }
    static Gate z(std::size_t q) { return {GateKind::Z, {q}, {}}; }
    static Gate s(std::size_t q) { return {GateKind::S, {q}, {}}; }
    static Gate t(std::size_t q) { return {GateKind::T, {q}, {}}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, {control, target}, {}};
    }
    // Arbitrary unitary on the listed qubits (first target most significant).
    static Gate custom_unitary(ComplexMatrix u, std::vector<std::size_t> targets);

    ComplexMatrix matrix() const;
};

struct Circuit {
    std::size_t n_qubits;
    std::vector<Gate> gates;
};

// Explicit truth table for f: {0,1}^n_in -> {0,1}^n_out.
struct BooleanOracle {
    std::size_t n_in;
    std::size_t n_out;
    std::vector<std::uint64_t> table;  // table[x] = f(x), length 2^n_in

    BooleanOracle(std::size_t n_in, std::size_t n_out, std::vector<std::uint64_t> table);
};

// Rows y of a homogeneous linear system y . x = 0 over GF(2).
struct Gf2System {
    std::vector<std::uint64_t> equations;
};

struct ShorRunReport {
    std::uint64_t modulus = 0;      // N
    std::uint64_t base = 0;         // last a tried
    std::uint64_t register_size = 0;  // s
    std::vector<std::uint64_t> samples;
    std::optional<std::uint64_t> candidate_r;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
    std::size_t attempts = 0;
};

enum class OracleVerdict { Constant, Balanced };

Ket run_circuit(const Circuit& c, const Ket& input);

// Permutation matrix for U_f : |x>|y> -> |x>|y xor f(x)>, input register
// most significant.
ComplexMatrix oracle_unitary(const BooleanOracle& f);

// Single oracle call; deterministic under the constant/balanced promise.
OracleVerdict deutsch_decide(const BooleanOracle& f);
OracleVerdict deutsch_jozsa_decide(const BooleanOracle& f);

// Marginal distribution of the input register after H - U_f - H; exact,
// the output register is traced rather than measured.
std::vector<double> simon_sample_distribution(const BooleanOracle& f);
std::uint64_t simon_find_period(const BooleanOracle& f, Rng& rng);

// Unique nonzero null-space vector when the nullity is 1, otherwise nullopt.
std::optional<std::uint64_t> gf2_solve(const Gf2System& sys, std::size_t n);

// Discrete Fourier transform on Z_s: entries (1/sqrt(s)) e^{2 pi i xy / s}.
ComplexMatrix dft_mod_s(std::size_t s);

// Exact distribution of the measured input register value c for the
// order-finding state sum_x |x>|a^x mod N> after the DFT.
std::vector<double> shor_order_distribution(std::uint64_t n_mod, std::uint64_t a, std::size_t s);
std::uint64_t shor_order_sample(std::uint64_t n_mod, std::uint64_t a, std::size_t s, Rng& rng);

ShorRunReport shor_factor(std::uint64_t n_mod, std::size_t s, Rng& rng, std::size_t max_attempts,
                          std::optional<std::uint64_t> forced_a = std::nullopt);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace qinfo
