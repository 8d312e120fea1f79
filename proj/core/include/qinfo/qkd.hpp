// Seeded simulations of BB84, Ekert, and the pre/post-selection key
// distribution protocol, with pluggable intercept-resend eavesdroppers.

#pragma once

#include <cstdint>
#include <string>

#include "qinfo/decomposition.hpp"
#include "qinfo/state.hpp"

namespace qinfo {

enum class EveKind { None, InterceptResendRandomBasis, InterceptResendFixed };
enum class Observable { X, Y, Z };

struct EveStrategy {
    EveKind kind = EveKind::None;
    Observable fixed = Observable::Z;

    static EveStrategy none() { return {EveKind::None, Observable::Z}; }
    static EveStrategy random_basis() {
        return {EveKind::InterceptResendRandomBasis, Observable::Z};
    }
    static EveStrategy fixed_observable(Observable o) {
        return {EveKind::InterceptResendFixed, o};
    }
};

enum class RoundClass { Sifted, Test, Discarded };

struct RoundRecord {
    int preparation = -1;    // protocol-specific preparation label
    int alice_basis = -1;
    int bob_basis = -1;
    int eve_basis = -1;      // -1 when Eve did not touch the round
    int eve_outcome = -1;
    int alice_outcome = -1;  // pre/post protocol: R outcome index 0..3
    int bob_outcome = -1;
    RoundClass classification = RoundClass::Discarded;
    bool mismatch = false;   // disclosed-round disagreement
};

struct ProtocolTranscript {
    std::string protocol;
    std::size_t n_rounds = 0;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> rounds;
    std::string sifted_key_alice;
    std::string sifted_key_bob;
    double test_statistic = 0;
    bool eavesdropper_detected = false;

    std::string to_json() const;
};

// The Bell state (|00>+|11>)/sqrt(2) with the four eigenstates r1..r4 of the
// two-particle observable measured by Alice after Bob's spin measurement.
struct PrePostState {
    Ket pre;
    std::vector<Ket> r_states;            // r1..r4
    EigenDecomposition post_observable_r;  // eigenvalues 1..4, eigenvectors r1..r4
};

// prob(q_k) = |<pre|P_k|post>|^2 / sum_i |<pre|P_i|post>|^2, conditional on
// both the pre- and post-selected states.
double abl_probability(const Ket& pre, const Ket& post,
                       const std::vector<ComplexMatrix>& projectors, std::size_t k);

PrePostState build_r_observable();

// Retrodicted outcome (0 = up, 1 = down) for each R eigenstate and each of
// sigma_x, sigma_y, sigma_z.
int prepost_table_outcome(std::size_t r_index, Observable obs);

ProtocolTranscript bb84_run(std::size_t n, const EveStrategy& eve, double test_fraction,
                            std::uint64_t seed, double qber_threshold = 0.05);

ProtocolTranscript ekert_run(std::size_t n, const EveStrategy& eve, std::uint64_t seed);

ProtocolTranscript prepost_run(std::size_t n, const EveStrategy& eve, std::uint64_t seed);

// Max absolute difference between the exact joint (die, pointer, R) outcome
// distributions with Bob measuring immediately vs. keeping the choice and
// measurement at the quantum level until after Alice's R measurement.
double deferred_measurement_exact_distance();
// Two-sample estimate of the same distance from n runs of each procedure.
double deferred_measurement_equivalence(std::size_t n, std::uint64_t seed);

}  // namespace qinfo
