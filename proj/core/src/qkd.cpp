#include "qinfo/qkd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "qinfo/circuits.hpp"
#include "qinfo/parallel.hpp"
#include "qinfo/rng.hpp"

namespace qinfo {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const cplx kI(0.0, 1.0);

// Eigenbasis (up, down) of a single-qubit observable.
std::pair<Ket, Ket> observable_basis(Observable o) {
    switch (o) {
        case Observable::X:
            return {Ket({kInvSqrt2, kInvSqrt2}), Ket({kInvSqrt2, -kInvSqrt2})};
        case Observable::Y:
            return {Ket({kInvSqrt2, kI * kInvSqrt2}), Ket({kInvSqrt2, -kI * kInvSqrt2})};
        case Observable::Z:
            return {Ket({1.0, 0.0}), Ket({0.0, 1.0})};
    }
    throw std::invalid_argument("unknown observable");
}

// Eigenbasis of the spin observable along angle theta in the x-z plane.
std::pair<Ket, Ket> direction_basis(double theta) {
    return {Ket({std::cos(theta / 2), std::sin(theta / 2)}),
            Ket({-std::sin(theta / 2), std::cos(theta / 2)})};
}

// Projective measurement of a single qubit; returns (outcome, collapsed ket).
std::pair<int, Ket> measure_qubit(const Ket& psi, const std::pair<Ket, Ket>& basis, Rng& rng) {
    const double p0 = std::norm(basis.first.inner(psi));
    const int outcome = rng.next_double() < p0 ? 0 : 1;
    return {outcome, outcome == 0 ? basis.first : basis.second};
}

// Projective measurement of one factor of a two-qubit ket.
std::pair<int, Ket> measure_factor(const Ket& state, std::size_t factor,
                                   const std::pair<Ket, Ket>& basis, Rng& rng) {
    const Ket* b[2] = {&basis.first, &basis.second};
    std::vector<std::vector<cplx>> cond(2, std::vector<cplx>(2));
    double probs[2] = {0, 0};
    for (int k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 2; ++j) {
            cplx s = 0;
            for (std::size_t i = 0; i < 2; ++i) {
                const std::size_t idx = factor == 0 ? i * 2 + j : j * 2 + i;
                s += std::conj((*b[k])[i]) * state[idx];
            }
            cond[k][j] = s;
            probs[k] += std::norm(s);
        }
    const int outcome = rng.next_double() < probs[0] ? 0 : 1;
    const Ket rest(cond[outcome]);  // normalizes
    return {outcome, factor == 0 ? tensor(*b[outcome], rest) : tensor(rest, *b[outcome])};
}

const char* class_name(RoundClass c) {
    switch (c) {
        case RoundClass::Sifted: return "sifted";
        case RoundClass::Test: return "test";
        case RoundClass::Discarded: return "discarded";
    }
    return "?";
}

}  // namespace

std::string ProtocolTranscript::to_json() const {
    nlohmann::json rounds_json = nlohmann::json::array();
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const RoundRecord& r = rounds[i];
        rounds_json.push_back({{"round", i},
                               {"preparation", r.preparation},
                               {"alice_basis", r.alice_basis},
                               {"bob_basis", r.bob_basis},
                               {"eve_basis", r.eve_basis},
                               {"eve_outcome", r.eve_outcome},
                               {"alice_outcome", r.alice_outcome},
                               {"bob_outcome", r.bob_outcome},
                               {"classification", class_name(r.classification)},
                               {"mismatch", r.mismatch}});
    }
    const nlohmann::json j = {{"protocol", protocol},
                              {"seed", seed},
                              {"n_rounds", n_rounds},
                              {"rounds", rounds_json},
                              {"sifted_key_alice", sifted_key_alice},
                              {"sifted_key_bob", sifted_key_bob},
                              {"test_statistic", test_statistic},
                              {"detected", eavesdropper_detected}};
    return j.dump(2);
}

double abl_probability(const Ket& pre, const Ket& post,
                       const std::vector<ComplexMatrix>& projectors, std::size_t k) {
    if (k >= projectors.size()) throw std::invalid_argument("projector index out of range");
    ComplexMatrix sum = ComplexMatrix(pre.dim(), pre.dim());
    for (const ComplexMatrix& p : projectors) sum = sum + p;
    if ((sum - ComplexMatrix::identity(pre.dim())).max_abs() > kIterativeTol)
        throw std::invalid_argument("projectors must sum to the identity");

    double denom = 0, num = 0;
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        cplx amp = 0;
        const std::vector<cplx> ppost = apply(projectors[i], post);
        for (std::size_t j = 0; j < pre.dim(); ++j) amp += std::conj(pre[j]) * ppost[j];
        const double w = std::norm(amp);
        denom += w;
        if (i == k) num = w;
    }
    if (denom <= kAlgebraicTol) throw std::invalid_argument("incompatible pre/post pair");
    return num / denom;
}

PrePostState build_r_observable() {
    const cplx e_plus = std::exp(kI * (std::numbers::pi / 4));
    const cplx e_minus = std::conj(e_plus);

    PrePostState s;
    s.pre = Ket({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    s.r_states = {
        Ket({kInvSqrt2, 0.5 * e_plus, 0.5 * e_minus, 0.0}),
        Ket({kInvSqrt2, -0.5 * e_plus, -0.5 * e_minus, 0.0}),
        Ket({0.0, 0.5 * e_minus, 0.5 * e_plus, kInvSqrt2}),
        Ket({0.0, -0.5 * e_minus, -0.5 * e_plus, kInvSqrt2}),
    };

    // Self-checks: orthonormality and the resolution of |pre>.
    std::vector<cplx> half_sum(4, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const cplx g = s.r_states[i].inner(s.r_states[j]);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > kAlgebraicTol)
                throw std::logic_error("r-states are not orthonormal");
        }
        for (std::size_t a = 0; a < 4; ++a) half_sum[a] += 0.5 * s.r_states[i][a];
    }
    for (std::size_t a = 0; a < 4; ++a)
        if (std::abs(half_sum[a] - s.pre[a]) > kAlgebraicTol)
            throw std::logic_error("r-states do not resolve the Bell state");

    s.post_observable_r.eigenvalues = {1.0, 2.0, 3.0, 4.0};
    s.post_observable_r.eigenvectors = s.r_states;
    return s;
}

int prepost_table_outcome(std::size_t r_index, Observable obs) {
    if (r_index >= 4) throw std::invalid_argument("r index out of range");
    // Rows r1..r4, columns sigma_x / sigma_y / sigma_z; 0 = up, 1 = down.
    static const int table[4][3] = {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    return table[r_index][static_cast<int>(obs)];
}

ProtocolTranscript bb84_run(std::size_t n, const EveStrategy& eve, double test_fraction,
                            std::uint64_t seed, double qber_threshold) {
    if (n < 8) throw std::invalid_argument("need at least 8 rounds");
    if (test_fraction <= 0 || test_fraction >= 1)
        throw std::invalid_argument("test_fraction must lie in (0,1)");

    ProtocolTranscript t;
    t.protocol = "bb84";
    t.n_rounds = n;
    t.seed = seed;
    t.rounds.resize(n);

    parallel_for(n, [&](std::size_t i) {
        Rng rng = Rng::derive(seed, i);
        RoundRecord& r = t.rounds[i];

        // Alice: uniform basis (0 = Z, 1 = X) and bit.
        r.alice_basis = static_cast<int>(rng.next_below(2));
        const int bit = static_cast<int>(rng.next_below(2));
        r.preparation = r.alice_basis * 2 + bit;
        const auto alice_pair =
            observable_basis(r.alice_basis == 0 ? Observable::Z : Observable::X);
        Ket flying = bit == 0 ? alice_pair.first : alice_pair.second;

        // Eve: intercept-resend per strategy.
        if (eve.kind != EveKind::None) {
            Observable eo = eve.fixed;
            if (eve.kind == EveKind::InterceptResendRandomBasis)
                eo = rng.next_below(2) == 0 ? Observable::Z : Observable::X;
            r.eve_basis = static_cast<int>(eo);
            auto [outcome, resent] = measure_qubit(flying, observable_basis(eo), rng);
            r.eve_outcome = outcome;
            flying = resent;
        }

        // Bob: uniform basis, projective measurement.
        r.bob_basis = static_cast<int>(rng.next_below(2));
        const auto bob_pair = observable_basis(r.bob_basis == 0 ? Observable::Z : Observable::X);
        r.bob_outcome = measure_qubit(flying, bob_pair, rng).first;
        r.alice_outcome = bit;

        if (r.alice_basis != r.bob_basis) {
            r.classification = RoundClass::Discarded;
        } else if (rng.next_double() < test_fraction) {
            r.classification = RoundClass::Test;
            r.mismatch = r.bob_outcome != bit;
        } else {
            r.classification = RoundClass::Sifted;
        }
    });

    std::size_t disclosed = 0, errors = 0;
    for (const RoundRecord& r : t.rounds) {
        if (r.classification == RoundClass::Sifted) {
            t.sifted_key_alice.push_back(r.alice_outcome == 0 ? '0' : '1');
            t.sifted_key_bob.push_back(r.bob_outcome == 0 ? '0' : '1');
        } else if (r.classification == RoundClass::Test) {
            ++disclosed;
            if (r.mismatch) ++errors;
        }
    }
    t.test_statistic = disclosed == 0 ? 0.0 : static_cast<double>(errors) / disclosed;
    t.eavesdropper_detected = t.test_statistic > qber_threshold;
    return t;
}

ProtocolTranscript ekert_run(std::size_t n, const EveStrategy& eve, std::uint64_t seed) {
    if (n < 12) throw std::invalid_argument("need at least 12 rounds");
    const double kTrine[3] = {0.0, 2 * std::numbers::pi / 3, 4 * std::numbers::pi / 3};

    ProtocolTranscript t;
    t.protocol = "ekert";
    t.n_rounds = n;
    t.seed = seed;
    t.rounds.resize(n);

    parallel_for(n, [&](std::size_t i) {
        Rng rng = Rng::derive(seed, i);
        RoundRecord& r = t.rounds[i];

        Ket pair({0.0, kInvSqrt2, -kInvSqrt2, 0.0});  // singlet

        // Eve intercepts Bob's particle (factor 1).
        if (eve.kind != EveKind::None) {
            std::pair<Ket, Ket> eve_basis;
            if (eve.kind == EveKind::InterceptResendRandomBasis) {
                r.eve_basis = static_cast<int>(rng.next_below(3));
                eve_basis = direction_basis(kTrine[r.eve_basis]);
            } else {
                r.eve_basis = static_cast<int>(eve.fixed);
                eve_basis = observable_basis(eve.fixed);
            }
            auto [outcome, collapsed] = measure_factor(pair, 1, eve_basis, rng);
            r.eve_outcome = outcome;
            pair = collapsed;
        }

        r.alice_basis = static_cast<int>(rng.next_below(3));
        r.bob_basis = static_cast<int>(rng.next_below(3));
        auto [ao, after_a] = measure_factor(pair, 0, direction_basis(kTrine[r.alice_basis]), rng);
        r.alice_outcome = ao;
        r.bob_outcome = measure_factor(after_a, 1, direction_basis(kTrine[r.bob_basis]), rng).first;

        if (r.alice_basis == r.bob_basis) {
            r.classification = RoundClass::Sifted;
        } else {
            r.classification = RoundClass::Test;
            r.mismatch = r.alice_outcome == r.bob_outcome;  // same-outcome indicator
        }
    });

    std::size_t tests = 0, same = 0;
    for (const RoundRecord& r : t.rounds) {
        if (r.classification == RoundClass::Sifted) {
            t.sifted_key_alice.push_back(r.alice_outcome == 0 ? '0' : '1');
            t.sifted_key_bob.push_back(r.bob_outcome == 0 ? '1' : '0');  // singlet flip
        } else {
            ++tests;
            if (r.mismatch) ++same;
        }
    }
    t.test_statistic = tests == 0 ? 0.0 : static_cast<double>(same) / tests;
    // Quantum correlations give 3/4; intercept-resend caps the rate at the
    // local bound 2/3.  Decide at the midpoint.
    t.eavesdropper_detected = t.test_statistic < 17.0 / 24.0;
    return t;
}

ProtocolTranscript prepost_run(std::size_t n, const EveStrategy& eve, std::uint64_t seed) {
    if (n < 8) throw std::invalid_argument("need at least 8 rounds");
    const PrePostState pp = build_r_observable();

    ProtocolTranscript t;
    t.protocol = "prepost";
    t.n_rounds = n;
    t.seed = seed;
    t.rounds.resize(n);

    parallel_for(n, [&](std::size_t i) {
        Rng rng = Rng::derive(seed, i);
        RoundRecord& r = t.rounds[i];

        Ket state = pp.pre;

        // Eve acts on the channel qubit (factor 1).
        if (eve.kind != EveKind::None) {
            Observable eo = eve.fixed;
            if (eve.kind == EveKind::InterceptResendRandomBasis)
                eo = rng.next_below(2) == 0 ? Observable::X : Observable::Z;
            r.eve_basis = static_cast<int>(eo);
            auto [outcome, collapsed] = measure_factor(state, 1, observable_basis(eo), rng);
            r.eve_outcome = outcome;
            state = collapsed;
        }

        // Bob: X or Z uniformly on the channel qubit.
        const Observable bob_obs = rng.next_below(2) == 0 ? Observable::X : Observable::Z;
        r.bob_basis = static_cast<int>(bob_obs);
        auto [bo, after_bob] = measure_factor(state, 1, observable_basis(bob_obs), rng);
        r.bob_outcome = bo;

        // Alice: R measurement on the retained pair.
        std::vector<double> probs(4);
        for (std::size_t k = 0; k < 4; ++k) probs[k] = std::norm(pp.r_states[k].inner(after_bob));
        r.alice_outcome = static_cast<int>(rng.sample(probs));

        if (r.alice_outcome == 0 || r.alice_outcome == 3) {
            r.classification = RoundClass::Sifted;  // S14 key round
        } else {
            r.classification = RoundClass::Test;  // S23 retrodiction round
            r.mismatch =
                prepost_table_outcome(static_cast<std::size_t>(r.alice_outcome), bob_obs) !=
                r.bob_outcome;
        }
    });

    std::size_t tests = 0, mismatches = 0;
    for (const RoundRecord& r : t.rounds) {
        if (r.classification == RoundClass::Sifted) {
            // Table 1 fixes Bob's outcome independent of basis: r1 -> 0, r4 -> 1.
            t.sifted_key_alice.push_back(r.alice_outcome == 0 ? '0' : '1');
            t.sifted_key_bob.push_back(r.bob_outcome == 0 ? '0' : '1');
        } else {
            ++tests;
            if (r.mismatch) ++mismatches;
        }
    }
    t.test_statistic = tests == 0 ? 0.0 : static_cast<double>(mismatches) / tests;
    t.eavesdropper_detected = mismatches > 0;
    return t;
}

namespace {

// Joint distribution over (R outcome, die, pointer) with Bob measuring the
// channel qubit immediately after the die roll.
std::vector<double> immediate_joint(const PrePostState& pp) {
    std::vector<double> p(16, 0.0);
    for (int d = 0; d < 2; ++d) {
        const auto basis = observable_basis(d == 0 ? Observable::X : Observable::Z);
        const Ket* b[2] = {&basis.first, &basis.second};
        for (int o = 0; o < 2; ++o) {
            // Project the channel qubit and renormalize.
            std::vector<cplx> cond(2);
            double prob = 0;
            for (std::size_t a = 0; a < 2; ++a) {
                cplx s = 0;
                for (std::size_t c = 0; c < 2; ++c)
                    s += std::conj((*b[o])[c]) * pp.pre[a * 2 + c];
                cond[a] = s;
                prob += std::norm(s);
            }
            if (prob <= 0) continue;
            const Ket post = tensor(Ket(cond), *b[o]);
            for (std::size_t k = 0; k < 4; ++k)
                p[k * 4 + d * 2 + o] += 0.5 * prob * std::norm(pp.r_states[k].inner(post));
        }
    }
    return p;
}

// Joint distribution with the die and measurement kept quantum: ancillas
// D (die) and P (pointer) on factors 2 and 3, Alice measuring R first.
std::vector<double> deferred_joint(const PrePostState& pp) {
    const ComplexMatrix x = pauli_x();
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const auto xb = observable_basis(Observable::X);
    const auto zb = observable_basis(Observable::Z);

    // Controlled record operators on (C, P).
    const auto record = [&](const std::pair<Ket, Ket>& basis) {
        return tensor(basis.first.projector(), i2) + tensor(basis.second.projector(), x);
    };
    const ComplexMatrix u_x = record(xb);
    const ComplexMatrix u_z = record(zb);

    // V on (C, D, P): die value selects which observable gets recorded.
    ComplexMatrix v(8, 8);
    for (std::size_t c1 = 0; c1 < 2; ++c1)
        for (std::size_t p1 = 0; p1 < 2; ++p1)
            for (std::size_t c0 = 0; c0 < 2; ++c0)
                for (std::size_t p0 = 0; p0 < 2; ++p0)
                    for (std::size_t d = 0; d < 2; ++d) {
                        const ComplexMatrix& u = d == 0 ? u_x : u_z;
                        v(c1 * 4 + d * 2 + p1, c0 * 4 + d * 2 + p0) = u(c1 * 2 + p1, c0 * 2 + p0);
                    }

    // |pre>_{AC} (x) |d0>_D (x) |0>_P, then V on factors (C, D, P).
    const Ket d0({kInvSqrt2, kInvSqrt2});
    const Ket start = tensor(tensor(pp.pre, d0), Ket({1.0, 0.0}));
    Circuit circ{4, {Gate::custom_unitary(v, {1, 2, 3})}};
    const Ket evolved = run_circuit(circ, start);

    std::vector<double> p(16, 0.0);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t d = 0; d < 2; ++d)
            for (std::size_t o = 0; o < 2; ++o) {
                cplx amp = 0;
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t c = 0; c < 2; ++c)
                        amp += std::conj(pp.r_states[k][a * 2 + c]) *
                               evolved[a * 8 + c * 4 + d * 2 + o];
                p[k * 4 + d * 2 + o] = std::norm(amp);
            }
    return p;
}

}  // namespace

double deferred_measurement_exact_distance() {
    const PrePostState pp = build_r_observable();
    const std::vector<double> p1 = immediate_joint(pp);
    const std::vector<double> p2 = deferred_joint(pp);
    double dist = 0;
    for (std::size_t i = 0; i < p1.size(); ++i) dist = std::max(dist, std::abs(p1[i] - p2[i]));
    return dist;
}

double deferred_measurement_equivalence(std::size_t n, std::uint64_t seed) {
    if (n < 1000) throw std::invalid_argument("need at least 1000 samples");
    const PrePostState pp = build_r_observable();
    const std::vector<double> p1 = immediate_joint(pp);
    const std::vector<double> p2 = deferred_joint(pp);

    std::vector<std::uint8_t> cell1(n), cell2(n);
    parallel_for(n, [&](std::size_t i) {
        Rng rng = Rng::derive(seed, i);
        cell1[i] = static_cast<std::uint8_t>(rng.sample(p1));
        cell2[i] = static_cast<std::uint8_t>(rng.sample(p2));
    });
    std::vector<double> e1(16, 0.0), e2(16, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        e1[cell1[i]] += 1.0 / n;
        e2[cell2[i]] += 1.0 / n;
    }
    double dist = 0;
    for (std::size_t i = 0; i < 16; ++i) dist = std::max(dist, std::abs(e1[i] - e2[i]));
    return dist;
}

}  // namespace qinfo
