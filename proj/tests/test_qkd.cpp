#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "qinfo/qkd.hpp"

using namespace qinfo;

namespace {

const double kR = 1.0 / std::sqrt(2.0);
const cplx kI(0.0, 1.0);

std::vector<Ket> basis_of(Observable o) {
    switch (o) {
        case Observable::X: return {Ket({kR, kR}), Ket({kR, -kR})};
        case Observable::Y: return {Ket({kR, kI * kR}), Ket({kR, -kI * kR})};
        case Observable::Z: return {Ket({1.0, 0.0}), Ket({0.0, 1.0})};
    }
    return {};
}

std::vector<ComplexMatrix> channel_projectors(Observable o) {
    const std::vector<Ket> b = basis_of(o);
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    return {tensor(i2, b[0].projector()), tensor(i2, b[1].projector())};
}

// Independent enumeration oracle for the disclosed BB84 error rate under an
// intercept-resend attack with the given basis-choice distribution over
// {Z, X} (same-basis rounds only, as disclosed rounds are sifted).
double bb84_expected_qber(double prob_eve_z, Observable fixed) {
    double err = 0;
    int cases = 0;
    for (int ab = 0; ab < 2; ++ab)
        for (int bit = 0; bit < 2; ++bit) {
            ++cases;
            const Ket sent = basis_of(ab == 0 ? Observable::Z : Observable::X)[bit];
            double round_err = 0;
            for (int eb = 0; eb < 2; ++eb) {
                const double pe = prob_eve_z < 0 ? (eb == 0 ? 1.0 : 0.0)
                                                 : (eb == 0 ? prob_eve_z : 1 - prob_eve_z);
                const std::vector<Ket> eve =
                    prob_eve_z < 0 ? basis_of(fixed)
                                   : basis_of(eb == 0 ? Observable::Z : Observable::X);
                if (pe == 0) continue;
                for (int k = 0; k < 2; ++k) {
                    const double pk = std::norm(eve[k].inner(sent));
                    const std::vector<Ket> bob = basis_of(ab == 0 ? Observable::Z : Observable::X);
                    const double flip = std::norm(bob[1 - bit].inner(eve[k]));
                    round_err += pe * pk * flip;
                }
                if (prob_eve_z < 0) break;
            }
            err += round_err;
        }
    return err / cases;
}

// Exact enumeration oracle for the pre/post protocol: intercept-resend Eve
// measures the channel qubit before Bob; every branch (Eve outcome, Bob
// outcome, R outcome) is weighted by its Born probability, and the mismatch
// rate is reported over the S23 post-selection.
double prepost_expected_mismatch(const std::vector<Observable>& eve_choices) {
    const PrePostState pp = build_r_observable();
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    double num = 0, den = 0;
    for (const Observable eve_obs : eve_choices)
        for (const Observable bob_obs : {Observable::X, Observable::Z}) {
            const double w0 = (1.0 / eve_choices.size()) * 0.5;
            for (int e = 0; e < 2; ++e) {
                const ComplexMatrix pe = tensor(i2, basis_of(eve_obs)[e].projector());
                std::vector<cplx> s1 = apply(pe, pp.pre);
                double p1 = 0;
                for (const cplx& z : s1) p1 += std::norm(z);
                if (p1 < 1e-15) continue;
                const Ket after_eve(std::move(s1));
                for (int b = 0; b < 2; ++b) {
                    const ComplexMatrix pb = tensor(i2, basis_of(bob_obs)[b].projector());
                    std::vector<cplx> s2 = apply(pb, after_eve);
                    double p2 = 0;
                    for (const cplx& z : s2) p2 += std::norm(z);
                    if (p2 < 1e-15) continue;
                    const Ket after_bob(std::move(s2));
                    for (std::size_t ri : {std::size_t{1}, std::size_t{2}}) {
                        const double pr = std::norm(pp.r_states[ri].inner(after_bob));
                        den += w0 * p1 * p2 * pr;
                        if (prepost_table_outcome(ri, bob_obs) != b) num += w0 * p1 * p2 * pr;
                    }
                }
            }
        }
    return num / den;
}

}  // namespace

TEST_CASE("abl probabilities") {
    const PrePostState pp = build_r_observable();

    // pre = post reduces to the Born rule.
    const Ket plus({kR, kR});
    const std::vector<ComplexMatrix> z = {Ket({1.0, 0.0}).projector(),
                                          Ket({0.0, 1.0}).projector()};
    CHECK(abl_probability(plus, plus, z, 0) == doctest::Approx(0.5));

    // Time symmetry: swapping pre and post leaves the probabilities fixed.
    const std::vector<ComplexMatrix> projs = channel_projectors(Observable::X);
    for (std::size_t r = 0; r < 4; ++r)
        CHECK(abl_probability(pp.pre, pp.r_states[r], projs, 0) ==
              doctest::Approx(abl_probability(pp.r_states[r], pp.pre, projs, 0)));

    // Probabilities lie in [0, 1] and sum to 1 over outcomes.
    const double p0 = abl_probability(pp.pre, pp.r_states[1], projs, 0);
    const double p1 = abl_probability(pp.pre, pp.r_states[1], projs, 1);
    CHECK(p0 + p1 == doctest::Approx(1.0));

    // Orthogonal pre/post pair with projectors that connect neither: error.
    CHECK_THROWS_WITH(abl_probability(Ket({1.0, 0.0}), Ket({0.0, 1.0}), z, 0),
                      "incompatible pre/post pair");
}

TEST_CASE("r observable construction") {
    const PrePostState pp = build_r_observable();
    REQUIRE(pp.r_states.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(pp.r_states[i].inner(pp.r_states[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);

    // 1/2 (r1 + r2 + r3 + r4) = |pre>.
    for (std::size_t a = 0; a < 4; ++a) {
        cplx sum = 0;
        for (const Ket& r : pp.r_states) sum += 0.5 * r[a];
        CHECK(std::abs(sum - pp.pre[a]) < 1e-10);
    }

    // The sigma_y-correlated expansion reproduces |pre> exactly.
    const std::vector<Ket> y = basis_of(Observable::Y);
    std::vector<cplx> form(4, 0.0);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            form[a * 2 + b] = kR * (y[0][a] * y[1][b] + y[1][a] * y[0][b]);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(form[i] - pp.pre[i]) < 1e-10);
}

TEST_CASE("table of certain retrodictions via the abl rule") {
    const PrePostState pp = build_r_observable();
    const Observable obs[3] = {Observable::X, Observable::Y, Observable::Z};
    for (std::size_t r = 0; r < 4; ++r)
        for (const Observable o : obs) {
            const int expect = prepost_table_outcome(r, o);
            const double p = abl_probability(pp.pre, pp.r_states[r], channel_projectors(o),
                                             static_cast<std::size_t>(expect));
            CHECK(std::abs(p - 1.0) < 1e-10);
        }
}

TEST_CASE("bb84 without eve") {
    const ProtocolTranscript t = bb84_run(2000, EveStrategy::none(), 0.5, 3);
    CHECK(t.test_statistic == 0.0);
    CHECK(!t.eavesdropper_detected);
    CHECK(t.sifted_key_alice == t.sifted_key_bob);
    CHECK(t.sifted_key_alice.size() > 300);
    // Sifted-key frequency test.
    const std::size_t len = t.sifted_key_alice.size();
    std::size_t ones = 0;
    for (char c : t.sifted_key_alice)
        if (c == '1') ++ones;
    CHECK(std::abs(static_cast<double>(ones) / len - 0.5) <
          3.0 / (2.0 * std::sqrt(static_cast<double>(len))));
    // Every round is classified.
    for (const RoundRecord& r : t.rounds)
        CHECK((r.classification == RoundClass::Sifted || r.classification == RoundClass::Test ||
               r.classification == RoundClass::Discarded));
}

TEST_CASE("bb84 under intercept-resend matches the enumeration oracle") {
    CHECK(bb84_expected_qber(0.5, Observable::Z) == doctest::Approx(0.25));
    // Fixed-basis Eve: no disturbance on matching rounds, a 1/2 flip on the
    // conjugate-basis half of the sifted rounds, hence 0.25 overall too.
    CHECK(bb84_expected_qber(-1, Observable::Z) == doctest::Approx(0.25));

    const ProtocolTranscript rnd = bb84_run(10000, EveStrategy::random_basis(), 0.5, 5);
    CHECK(std::abs(rnd.test_statistic - 0.25) < 0.02);
    CHECK(rnd.eavesdropper_detected);

    const ProtocolTranscript fz =
        bb84_run(10000, EveStrategy::fixed_observable(Observable::Z), 0.5, 6);
    CHECK(std::abs(fz.test_statistic - 0.25) < 0.02);
    CHECK(fz.eavesdropper_detected);
    // Fixed-Z errors occur only on X-basis sifted rounds.
    for (const RoundRecord& r : fz.rounds)
        if (r.mismatch) CHECK(r.alice_basis == 1);
}

TEST_CASE("ekert statistics") {
    const ProtocolTranscript clean = ekert_run(30000, EveStrategy::none(), 11);
    CHECK(std::abs(clean.test_statistic - 0.75) < 0.02);
    CHECK(!clean.eavesdropper_detected);
    CHECK(clean.sifted_key_alice == clean.sifted_key_bob);  // after the flip
    CHECK(!clean.sifted_key_alice.empty());

    const ProtocolTranscript tapped = ekert_run(30000, EveStrategy::random_basis(), 12);
    CHECK(tapped.test_statistic <= 2.0 / 3.0 + 0.02);
    CHECK(tapped.eavesdropper_detected);
}

TEST_CASE("prepost protocol") {
    const ProtocolTranscript clean = prepost_run(1000, EveStrategy::none(), 21);
    CHECK(clean.test_statistic == 0.0);
    CHECK(!clean.eavesdropper_detected);
    CHECK(clean.sifted_key_alice == clean.sifted_key_bob);
    CHECK(!clean.sifted_key_alice.empty());

    // Exact per-S23-round mismatch rates under intercept-resend, from the
    // enumeration oracle: 1/8 for a random X/Z choice, 1/4 for fixed Y.
    const double oracle_xz =
        prepost_expected_mismatch({Observable::X, Observable::Z});
    const double oracle_y = prepost_expected_mismatch({Observable::Y});
    CHECK(oracle_xz == doctest::Approx(0.125));
    CHECK(oracle_y == doctest::Approx(0.25));

    const ProtocolTranscript xz = prepost_run(10000, EveStrategy::random_basis(), 22);
    CHECK(std::abs(xz.test_statistic - oracle_xz) < 0.02);
    CHECK(xz.eavesdropper_detected);

    const ProtocolTranscript fy =
        prepost_run(10000, EveStrategy::fixed_observable(Observable::Y), 23);
    CHECK(std::abs(fy.test_statistic - oracle_y) < 0.02);
    CHECK(fy.eavesdropper_detected);
}

TEST_CASE("transcripts replay byte-identically and ignore worker count") {
    const std::string a = bb84_run(512, EveStrategy::random_basis(), 0.5, 99).to_json();
    const std::string b = bb84_run(512, EveStrategy::random_basis(), 0.5, 99).to_json();
    CHECK(a == b);

    setenv("QINFO_THREADS", "1", 1);
    const std::string serial = prepost_run(512, EveStrategy::random_basis(), 7).to_json();
    setenv("QINFO_THREADS", "5", 1);
    const std::string parallel = prepost_run(512, EveStrategy::random_basis(), 7).to_json();
    unsetenv("QINFO_THREADS");
    CHECK(serial == parallel);
}

TEST_CASE("deferred measurement equivalence") {
    CHECK(deferred_measurement_exact_distance() < 1e-10);
    CHECK(deferred_measurement_equivalence(10000, 4) < 0.03);
    CHECK_THROWS_AS(deferred_measurement_equivalence(10, 4), std::invalid_argument);
}
