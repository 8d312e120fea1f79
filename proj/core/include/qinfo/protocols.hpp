// Entanglement-assisted communication protocols plus the impossibility
// results expressed as executable checks.

#pragma once

#include "qinfo/state.hpp"

namespace qinfo {

struct TeleportResult {
    unsigned classical_bits;  // Alice's 2-bit Bell outcome
    Ket bob_state;
    double fidelity;
};

struct CorrelationReport {
    double theta1, theta2;
    std::size_t n_samples;
    double empirical_same;
    double analytic_same;
};

// Singlet state (|01> - |10>)/sqrt(2).
Ket singlet();
// Bell basis {Psi-, Psi+, Phi-, Phi+} as kets.
std::vector<Ket> bell_basis();

// Teleports a qubit through a shared singlet; Bob's corrected state always
// matches the input exactly.
TeleportResult teleport(const Ket& psi, Rng& rng);

// Encodes 2 classical bits in one qubit of a shared singlet; returns the
// decoded value (equal to `bits` for all four messages).
unsigned dense_code(unsigned bits);

// Spin directions are angles in the x-z plane: cos(theta) Z + sin(theta) X.
// Joint spin statistics on fresh singlets; same-outcome probability is
// sin^2((theta1 - theta2)/2).
CorrelationReport singlet_correlation(double theta1, double theta2, std::size_t n, Rng& rng);
double singlet_same_probability(double theta1, double theta2);

// Brute-force maximum average same-outcome rate over the unequal-angle pairs
// of the trine {0, 2pi/3, 4pi/3} for deterministic local assignments with
// perfect anti-correlation at equal angles.  Equals 2/3.
double lhv_same_outcome_bound();

// True iff a single unitary device could copy both states: identical or
// orthogonal inputs only.
bool cloning_feasible(const Ket& psi, const Ket& phi);

// Max-entry deviation of Bob's reduced state when Alice applies a local
// trace-preserving channel; always below tolerance.
double no_signalling_check(const Ket& bipartite, std::size_t dim_a,
                           const KrausChannel& alice_action);

}  // namespace qinfo
