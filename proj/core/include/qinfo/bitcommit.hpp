// Executable form of the bit-commitment no-go: honest commitments as
// ensembles, the entanglement-based cheating strategy, the Schmidt-based
// cheating unitary, and the six-state trine worked example.

#pragma once

#include "qinfo/decomposition.hpp"
#include "qinfo/rng.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

// Alice's two candidate committed states on ancilla (A) x channel (B).
struct CommitmentPair {
    Ket state0;
    Ket state1;
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
};

// Six channel-qubit states c0..c5 (two interleaved trines), the ancilla
// basis used for bit 0, the rotated basis used for bit 1, and the entangled
// state whose steering reproduces both honest ensembles.
struct PeresConstruction {
    std::vector<Ket> c_states;             // c0..c5
    std::vector<Ket> a_basis;              // a0, a2, a4
    std::vector<Ket> a_doubleprime_basis;  // a''1, a''3, a''5
    Ket entangled0;                        // dim 6 = 3 x 2
};

struct HonestCommitment {
    Ket channel_state;
    std::size_t secret_index;  // which c_i was sent
};

struct CheatOpening {
    std::size_t outcome_index;  // c-state label 0..5 certified by the outcome
    Ket bob_state;
};

PeresConstruction peres_construction();

// The (entangled0, entangled1) pair of the worked example; both Bob
// marginals equal I/2.
CommitmentPair peres_commitment_pair();

// Samples uniformly from {c0,c2,c4} (bit 0) or {c1,c3,c5} (bit 1).
HonestCommitment honest_commit(int bit, Rng& rng);

// Measures the ancilla of entangled0 in the bit-dependent basis; every
// outcome has probability 1/3 and steers Bob to the matching c state.
CheatOpening cheat_open(int bit, Rng& rng);

// Max entry magnitude of W_B(0) - W_B(1); 0 means concealing.
double concealment_check(const CommitmentPair& pair);

// Unitary U on the ancilla alone with (U x I)|state0> = |state1> up to
// global phase; exists whenever the pair is concealing.  Throws
// std::runtime_error("protocol not concealing: Bob marginals differ")
// when the Bob marginals deviate by more than 1e-8.
ComplexMatrix cheating_unitary(const CommitmentPair& pair);

}  // namespace qinfo
