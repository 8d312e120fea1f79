// Command-line front end: seeded runs of every protocol and algorithm in the
// library, golden-value verification, and JSON/CSV/text emission.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qinfo/bitcommit.hpp"
#include "qinfo/circuits.hpp"
#include "qinfo/info.hpp"
#include "qinfo/protocols.hpp"
#include "qinfo/qkd.hpp"
#include "qinfo/state.hpp"

using json = nlohmann::json;
using namespace qinfo;

namespace {

// Round to 12 significant digits so serialized numerics are stable.
double sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

Ket named_state(const std::string& name) {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    if (name == "0") return Ket({1.0, 0.0});
    if (name == "1") return Ket({0.0, 1.0});
    if (name == "+") return Ket({r, r});
    if (name == "-") return Ket({r, -r});
    if (name == "i") return Ket({r, i * r});
    if (name == "-i") return Ket({r, -i * r});
    throw CLI::ValidationError("--states", "unknown state name: " + name);
}

std::vector<Ket> parse_states(const std::string& csv) {
    std::vector<Ket> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(named_state(tok));
    return out;
}

EveStrategy parse_eve(const std::string& name) {
    if (name == "none") return EveStrategy::none();
    if (name == "random" || name == "random-xz" || name == "random-basis")
        return EveStrategy::random_basis();
    if (name == "fixed-x") return EveStrategy::fixed_observable(Observable::X);
    if (name == "fixed-y") return EveStrategy::fixed_observable(Observable::Y);
    if (name == "fixed-z") return EveStrategy::fixed_observable(Observable::Z);
    throw CLI::ValidationError("--eve", "unknown strategy: " + name);
}

Ket random_qubit(Rng& rng) {
    // Box-Muller normals give a Haar-uniform pure state after normalization.
    std::vector<cplx> amps(2);
    for (auto& a : amps) {
        const double u1 = std::max(rng.next_double(), 1e-300);
        const double u2 = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = cplx(r * std::cos(2 * std::numbers::pi * u2),
                 r * std::sin(2 * std::numbers::pi * u2));
    }
    return Ket(std::move(amps));
}

std::string scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit(const json& doc, const std::string& format, const std::string& out_path) {
    std::string text;
    if (format == "json") {
        text = doc.dump(2) + "\n";
    } else if (format == "csv") {
        std::string header, row;
        for (const auto& [k, v] : doc.at("results").items()) {
            if (v.is_object() || v.is_array()) continue;
            if (!header.empty()) { header += ","; row += ","; }
            header += k;
            row += scalar_to_string(v);
        }
        text = header + "\n" + row + "\n";
    } else {  // text
        std::ostringstream os;
        os << "command: " << doc.at("command").get<std::string>() << "\n";
        for (const auto& [k, v] : doc.at("results").items())
            if (!v.is_object() && !v.is_array()) os << k << " = " << scalar_to_string(v) << "\n";
        text = os.str();
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << text;
    }
}

json transcript_summary(const ProtocolTranscript& t) {
    return {{"protocol", t.protocol},
            {"seed", t.seed},
            {"n_rounds", t.n_rounds},
            {"sifted_length", t.sifted_key_alice.size()},
            {"keys_equal", t.sifted_key_alice == t.sifted_key_bob},
            {"test_statistic", sig12(t.test_statistic)},
            {"detection_rate", sig12(t.test_statistic)},
            {"detected", t.eavesdropper_detected}};
}

void maybe_write_transcript(const ProtocolTranscript& t, const std::string& path) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    f << t.to_json() << "\n";
}

BooleanOracle balanced_oracle(std::size_t n, Rng& rng) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint64_t> table(size);
    for (std::size_t i = 0; i < size / 2; ++i) table[i] = 1;
    for (std::size_t i = size - 1; i > 0; --i)
        std::swap(table[i], table[rng.next_below(i + 1)]);
    return BooleanOracle(n, 1, std::move(table));
}

BooleanOracle simon_oracle(std::size_t n, std::uint64_t period) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint64_t> table(size);
    for (std::size_t x = 0; x < size; ++x)
        table[x] = period == 0 ? x : std::min<std::uint64_t>(x, x ^ period);
    return BooleanOracle(n, n, std::move(table));
}

// ---------------------------------------------------------------------------
// verify: golden values drawn from the library's analytic reference points.

struct VerifyItem {
    std::string name;
    bool ok;
};

std::vector<VerifyItem> run_verify(std::uint64_t seed) {
    std::vector<VerifyItem> items;
    const auto check = [&](const std::string& name, bool ok) { items.push_back({name, ok}); };
    const auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

    {
        const ProbDist p({0.5, 0.25, 0.125, 0.125});
        check("shannon-7/4", near(shannon_entropy(p), 1.75, 1e-12));
        check("huffman-7/4", near(huffman_code(p).expected_length(p), 1.75, 1e-12));
    }
    {
        check("singlet-3/4",
              near(singlet_same_probability(0.0, 2 * std::numbers::pi / 3), 0.75, 1e-12));
        check("singlet-edges", near(singlet_same_probability(0.3, 0.3), 0.0, 1e-12) &&
                                   near(singlet_same_probability(0.0, std::numbers::pi), 1.0, 1e-12));
        check("lhv-2/3", near(lhv_same_outcome_bound(), 2.0 / 3.0, 1e-12));
    }
    {
        const Povm povm = unambiguous_discrimination_povm();
        const DensityOperator s1 = DensityOperator::pure(named_state("0"));
        const DensityOperator s2 = DensityOperator::pure(named_state("+"));
        const KrausChannel k = povm_to_kraus(povm);
        check("povm-no-false-certify", outcome_distribution(s2, k)[0] <= 1e-10 &&
                                           outcome_distribution(s1, k)[1] <= 1e-10);
        ComplexMatrix sum(2, 2);
        for (const auto& e : povm.effects) sum = sum + e;
        check("povm-complete", (sum - ComplexMatrix::identity(2)).max_abs() <= 1e-10);
    }
    {
        const DensityOperator bell =
            DensityOperator::pure(Ket({1 / std::sqrt(2.0), 0.0, 0.0, 1 / std::sqrt(2.0)}));
        const QuantumEntropies q = quantum_joint_conditional_mutual(bell, 2, 2);
        check("bell-entropies", near(q.s_ab, 0.0, 1e-8) && near(q.s_a, 1.0, 1e-8) &&
                                    near(q.s_b, 1.0, 1e-8) && near(q.s_a_given_b, -1.0, 1e-8) &&
                                    near(q.s_mutual, 2.0, 1e-8));
    }
    {
        const Ensemble bb84 = Ensemble::of_pure(
            {0.25, 0.25, 0.25, 0.25},
            {named_state("0"), named_state("1"), named_state("+"), named_state("-")});
        check("holevo-bb84", near(holevo_chi(bb84), 1.0, 1e-8));
        const DensityOperator rho = density_from_ensemble(
            Ensemble::of_pure({0.5, 0.5}, {named_state("0"), named_state("+")}));
        check("schumacher-entropy", near(von_neumann_entropy(rho), 0.600876, 1e-3));
    }
    {
        Rng rng(seed);
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            const Ket psi = random_qubit(rng);
            if (teleport(psi, rng).fidelity < 1.0 - 1e-9) ok = false;
        }
        check("teleport-fidelity", ok);
        bool dense_ok = true;
        for (unsigned b = 0; b < 4; ++b) dense_ok = dense_ok && dense_code(b) == b;
        check("dense-roundtrip", dense_ok);
    }
    {
        const ProtocolTranscript t = bb84_run(256, EveStrategy::none(), 0.5, seed);
        check("bb84-no-eve", t.test_statistic == 0.0 && !t.eavesdropper_detected &&
                                 t.sifted_key_alice == t.sifted_key_bob &&
                                 !t.sifted_key_alice.empty());
    }
    {
        const PrePostState pp = build_r_observable();
        bool ok = true;
        const Observable obs[3] = {Observable::X, Observable::Y, Observable::Z};
        for (std::size_t r = 0; r < 4; ++r)
            for (const Observable o : obs) {
                const auto basis = o == Observable::X
                                       ? std::pair{named_state("+"), named_state("-")}
                                   : o == Observable::Y
                                       ? std::pair{named_state("i"), named_state("-i")}
                                       : std::pair{named_state("0"), named_state("1")};
                const ComplexMatrix i2 = ComplexMatrix::identity(2);
                const std::vector<ComplexMatrix> projectors = {
                    tensor(i2, basis.first.projector()), tensor(i2, basis.second.projector())};
                const int expect = prepost_table_outcome(r, o);
                const double p = abl_probability(pp.pre, pp.r_states[r], projectors,
                                                 static_cast<std::size_t>(expect));
                if (std::abs(p - 1.0) > 1e-10) ok = false;
            }
        check("prepost-table", ok);
        check("deferred-exact", deferred_measurement_exact_distance() <= 1e-10);
    }
    {
        bool ok = true;
        try {
            const PeresConstruction p = peres_construction();  // self-checking
            Rng rng(seed);
            for (int trial = 0; trial < 12; ++trial) {
                const int bit = trial % 2;
                const CheatOpening open = cheat_open(bit, rng);
                const Ket& expect = p.c_states[open.outcome_index];
                if (std::norm(expect.inner(open.bob_state)) < 1.0 - 1e-10) ok = false;
            }
        } catch (const std::exception&) {
            ok = false;
        }
        check("commit-cheat-states", ok);
        const CommitmentPair pair = peres_commitment_pair();
        bool uok = concealment_check(pair) <= 1e-10;
        if (uok) {
            const ComplexMatrix u = cheating_unitary(pair);
            const Ket mapped =
                Ket(apply(tensor(u, ComplexMatrix::identity(2)), pair.state0));
            uok = u.is_unitary(1e-8) && std::norm(mapped.inner(pair.state1)) >= 1.0 - 1e-8;
        }
        check("commit-cheating-unitary", uok);
    }
    {
        const BooleanOracle c1(1, 1, {1, 1});
        const BooleanOracle ident(1, 1, {0, 1});
        check("deutsch", deutsch_decide(c1) == OracleVerdict::Constant &&
                             deutsch_decide(ident) == OracleVerdict::Balanced);
        Rng rng(seed);
        check("deutsch-jozsa",
              deutsch_jozsa_decide(BooleanOracle(3, 1, std::vector<std::uint64_t>(8, 1))) ==
                      OracleVerdict::Constant &&
                  deutsch_jozsa_decide(balanced_oracle(3, rng)) == OracleVerdict::Balanced);
        Rng srng(seed);
        check("simon-n3", simon_find_period(simon_oracle(3, 5), srng) == 5);
    }
    {
        const std::vector<double> dist = shor_order_distribution(15, 7, 64);
        bool support_ok = true;
        for (std::size_t c = 0; c < dist.size(); ++c) {
            const bool expect = (c % 16) == 0;
            if (expect && std::abs(dist[c] - 0.25) > 1e-10) support_ok = false;
            if (!expect && dist[c] > 1e-10) support_ok = false;
        }
        check("shor-15-distribution", support_ok);
        Rng rng(seed);
        const ShorRunReport rep = shor_factor(15, 64, rng, 20, 7);
        check("shor-15-factors", rep.factors.has_value() && rep.factors->first == 3 &&
                                     rep.factors->second == 5 && rep.candidate_r == 4);
    }
    return items;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum information toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--format", format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write output to this path instead of stdout");

    // entropy
    auto* c_entropy = app.add_subcommand("entropy", "Shannon entropy and Huffman code");
    std::string dist_csv = "0.5,0.25,0.125,0.125";
    c_entropy->add_option("--dist", dist_csv, "comma-separated probabilities")
        ->capture_default_str();

    // vn-entropy
    auto* c_vn = app.add_subcommand("vn-entropy", "von Neumann entropy of a qubit ensemble");
    std::string weights_csv = "0.5,0.5";
    std::string states_csv = "0,+";
    c_vn->add_option("--weights", weights_csv, "ensemble weights")->capture_default_str();
    c_vn->add_option("--states", states_csv, "named states: 0,1,+,-,i,-i")->capture_default_str();

    // holevo
    auto* c_holevo = app.add_subcommand("holevo", "Holevo bound and accessible information");
    std::string h_weights = "0.25,0.25,0.25,0.25";
    std::string h_states = "0,1,+,-";
    std::string h_povm = "z";
    c_holevo->add_option("--weights", h_weights, "ensemble weights")->capture_default_str();
    c_holevo->add_option("--states", h_states, "named states")->capture_default_str();
    c_holevo->add_option("--povm", h_povm, "z|x|unambiguous")
        ->check(CLI::IsMember({"z", "x", "unambiguous"}))
        ->capture_default_str();

    // schumacher
    auto* c_sch = app.add_subcommand("schumacher", "typical-subspace compression roundtrip");
    std::size_t sch_n = 8, sch_samples = 1000;
    double sch_delta = 0.1;
    std::string sch_weights = "0.5,0.5", sch_states = "0,+";
    c_sch->add_option("--n", sch_n, "block length")->capture_default_str();
    c_sch->add_option("--delta", sch_delta, "typicality slack")->capture_default_str();
    c_sch->add_option("--samples", sch_samples, "Monte Carlo samples")->capture_default_str();
    c_sch->add_option("--weights", sch_weights, "source weights")->capture_default_str();
    c_sch->add_option("--states", sch_states, "source states")->capture_default_str();

    // teleport
    auto* c_tp = app.add_subcommand("teleport", "teleport random qubits through a singlet");
    std::size_t tp_trials = 100;
    c_tp->add_option("--trials", tp_trials, "number of random inputs")->capture_default_str();

    // dense
    app.add_subcommand("dense", "dense-coding roundtrip of all 2-bit messages");

    // bell
    auto* c_bell = app.add_subcommand("bell", "singlet same-outcome statistics");
    double theta1 = 0.0, theta2 = 2 * std::numbers::pi / 3;
    std::size_t bell_n = 100000;
    c_bell->add_option("--theta1", theta1, "Alice angle (radians)")->capture_default_str();
    c_bell->add_option("--theta2", theta2, "Bob angle (radians)")->capture_default_str();
    c_bell->add_option("--n", bell_n, "samples")->capture_default_str();

    // protocol runs
    std::size_t qkd_n = 10000;
    std::string eve_name = "none";
    double test_fraction = 0.5, threshold = 0.05;
    std::string transcript_path;
    auto add_qkd_flags = [&](CLI::App* c) {
        c->add_option("--n", qkd_n, "rounds")->capture_default_str();
        c->add_option("--eve", eve_name, "none|random-xz|fixed-x|fixed-y|fixed-z")
            ->capture_default_str();
        c->add_option("--transcript", transcript_path, "write full round-by-round JSON here");
    };
    auto* c_bb84 = app.add_subcommand("bb84", "BB84 with intercept-resend eavesdroppers");
    add_qkd_flags(c_bb84);
    c_bb84->add_option("--test-fraction", test_fraction, "disclosed fraction of sifted rounds")
        ->capture_default_str();
    c_bb84->add_option("--threshold", threshold, "QBER detection threshold")
        ->capture_default_str();
    auto* c_ekert = app.add_subcommand("ekert", "three-direction entanglement protocol");
    add_qkd_flags(c_ekert);
    auto* c_pp = app.add_subcommand("prepost", "pre/post-selection protocol with retrodiction");
    add_qkd_flags(c_pp);

    // bitcommit
    auto* c_bc = app.add_subcommand("bitcommit", "trine commitment: honest runs or EPR cheating");
    std::string bc_mode = "cheat";
    int bc_bit = 0;
    std::size_t bc_trials = 1000;
    c_bc->add_option("--mode", bc_mode, "honest|cheat")
        ->check(CLI::IsMember({"honest", "cheat"}))
        ->capture_default_str();
    c_bc->add_option("--bit", bc_bit, "committed bit")->check(CLI::Range(0, 1))
        ->capture_default_str();
    c_bc->add_option("--trials", bc_trials, "Monte Carlo trials")->capture_default_str();

    // algorithms
    auto* c_deutsch = app.add_subcommand("deutsch", "one-call constant/balanced decision");
    std::string deutsch_table = "0,1";
    c_deutsch->add_option("--table", deutsch_table, "f(0),f(1)")->capture_default_str();

    auto* c_dj = app.add_subcommand("dj", "n-bit constant/balanced decision");
    std::size_t dj_n = 3;
    std::string dj_kind = "balanced";
    c_dj->add_option("--n", dj_n, "input bits")->check(CLI::Range(1, 10))->capture_default_str();
    c_dj->add_option("--kind", dj_kind, "constant0|constant1|balanced")
        ->check(CLI::IsMember({"constant0", "constant1", "balanced"}))
        ->capture_default_str();

    auto* c_simon = app.add_subcommand("simon", "hidden-period recovery over GF(2)");
    std::size_t simon_n = 3;
    std::uint64_t simon_period = 5;
    c_simon->add_option("--n", simon_n, "input bits")->check(CLI::Range(1, 10))
        ->capture_default_str();
    c_simon->add_option("--period", simon_period, "hidden period (nonzero)")
        ->capture_default_str();

    auto* c_shor = app.add_subcommand("shor", "order finding and factoring");
    std::uint64_t shor_n = 15, shor_a = 0, shor_s = 64;
    std::size_t shor_attempts = 20;
    c_shor->add_option("--N", shor_n, "odd composite to factor")->capture_default_str();
    c_shor->add_option("--a", shor_a, "base (0 = random per attempt)")->capture_default_str();
    c_shor->add_option("--s", shor_s, "register size")->capture_default_str();
    c_shor->add_option("--attempts", shor_attempts, "max attempts")->capture_default_str();

    auto* c_verify = app.add_subcommand("verify", "run the golden-value suite");

    // Let --seed/--format/--out appear after the subcommand name.
    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (c_verify->parsed()) {
            const std::vector<VerifyItem> items = run_verify(seed);
            std::size_t passed = 0;
            std::ostringstream os;
            for (const VerifyItem& item : items) {
                os << (item.ok ? "ok   " : "FAIL ") << item.name << "\n";
                if (item.ok) ++passed;
            }
            os << "verified " << passed << "/" << items.size() << "\n";
            if (out_path.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream f(out_path, std::ios::binary);
                f << os.str();
            }
            return passed == items.size() ? 0 : 2;
        }

        const auto t0 = std::chrono::steady_clock::now();
        json config = {{"seed", seed}, {"format", format}};
        json results;
        std::string command;

        if (c_entropy->parsed()) {
            command = "entropy";
            const ProbDist p(parse_doubles(dist_csv));
            const PrefixCode code = huffman_code(p);
            json lengths = json::array(), words = json::array();
            for (const std::string& w : code.codewords) {
                lengths.push_back(w.size());
                words.push_back(w);
            }
            config["dist"] = dist_csv;
            results = {{"entropy", sig12(shannon_entropy(p))},
                       {"expected_length", sig12(code.expected_length(p))},
                       {"code_lengths", lengths},
                       {"codewords", words}};
        } else if (c_vn->parsed()) {
            command = "vn-entropy";
            const Ensemble e = Ensemble::of_pure(parse_doubles(weights_csv),
                                                 parse_states(states_csv));
            const DensityOperator rho = density_from_ensemble(e);
            config["weights"] = weights_csv;
            config["states"] = states_csv;
            results = {{"von_neumann_entropy", sig12(von_neumann_entropy(rho))}};
        } else if (c_holevo->parsed()) {
            command = "holevo";
            const Ensemble e =
                Ensemble::of_pure(parse_doubles(h_weights), parse_states(h_states));
            Povm povm = h_povm == "unambiguous"
                            ? unambiguous_discrimination_povm()
                            : Povm({named_state(h_povm == "z" ? "0" : "+").projector(),
                                    named_state(h_povm == "z" ? "1" : "-").projector()});
            config["weights"] = h_weights;
            config["states"] = h_states;
            config["povm"] = h_povm;
            results = {{"holevo_chi", sig12(holevo_chi(e))},
                       {"mutual_information", sig12(measurement_mutual_info(e, povm))}};
        } else if (c_sch->parsed()) {
            command = "schumacher";
            const std::vector<double> w = parse_doubles(sch_weights);
            const std::vector<Ket> states = parse_states(sch_states);
            const DensityOperator rho = density_from_ensemble(Ensemble::of_pure(w, states));
            Rng rng(seed);
            const SchumacherReport rep =
                schumacher_roundtrip(w, states, sch_n, sch_delta, rng, sch_samples);
            config["n"] = sch_n;
            config["delta"] = sch_delta;
            config["samples"] = sch_samples;
            results = {{"source_entropy", sig12(von_neumann_entropy(rho))},
                       {"qubit_rate", sig12(rep.qubit_rate)},
                       {"avg_fidelity", sig12(rep.avg_fidelity)},
                       {"subspace_dimension", rep.subspace_dimension}};
        } else if (c_tp->parsed()) {
            command = "teleport";
            Rng rng(seed);
            double min_fid = 1.0;
            std::vector<std::size_t> counts(4, 0);
            for (std::size_t i = 0; i < tp_trials; ++i) {
                const TeleportResult r = teleport(random_qubit(rng), rng);
                min_fid = std::min(min_fid, r.fidelity);
                ++counts[r.classical_bits];
            }
            config["trials"] = tp_trials;
            results = {{"min_fidelity", sig12(min_fid)},
                       {"outcome_counts", json(counts)}};
        } else if (app.get_subcommand("dense")->parsed()) {
            command = "dense";
            json decoded = json::array();
            bool ok = true;
            for (unsigned b = 0; b < 4; ++b) {
                const unsigned d = dense_code(b);
                decoded.push_back(d);
                ok = ok && d == b;
            }
            results = {{"decoded", decoded}, {"roundtrip_ok", ok}};
        } else if (c_bell->parsed()) {
            command = "bell";
            Rng rng(seed);
            const CorrelationReport r = singlet_correlation(theta1, theta2, bell_n, rng);
            config["theta1"] = sig12(theta1);
            config["theta2"] = sig12(theta2);
            config["n"] = bell_n;
            results = {{"empirical_same", sig12(r.empirical_same)},
                       {"analytic_same", sig12(r.analytic_same)},
                       {"lhv_bound", sig12(lhv_same_outcome_bound())}};
        } else if (c_bb84->parsed() || c_ekert->parsed() || c_pp->parsed()) {
            const EveStrategy eve = parse_eve(eve_name);
            ProtocolTranscript t;
            if (c_bb84->parsed()) {
                command = "bb84";
                t = bb84_run(qkd_n, eve, test_fraction, seed, threshold);
                config["test_fraction"] = sig12(test_fraction);
                config["threshold"] = sig12(threshold);
            } else if (c_ekert->parsed()) {
                command = "ekert";
                t = ekert_run(qkd_n, eve, seed);
            } else {
                command = "prepost";
                t = prepost_run(qkd_n, eve, seed);
            }
            config["n"] = qkd_n;
            config["eve"] = eve_name;
            results = transcript_summary(t);
            maybe_write_transcript(t, transcript_path);
        } else if (c_bc->parsed()) {
            command = "bitcommit";
            config["mode"] = bc_mode;
            config["bit"] = bc_bit;
            config["trials"] = bc_trials;
            Rng rng(seed);
            if (bc_mode == "honest") {
                ComplexMatrix avg(2, 2);
                for (std::size_t i = 0; i < bc_trials; ++i) {
                    const HonestCommitment h = honest_commit(bc_bit, rng);
                    avg = avg + h.channel_state.projector() * cplx(1.0 / bc_trials);
                }
                const double dev =
                    (avg - ComplexMatrix::identity(2) * cplx(0.5)).max_abs();
                results = {{"bob_density_deviation", sig12(dev)}};
            } else {
                const PeresConstruction p = peres_construction();
                const CommitmentPair pair = peres_commitment_pair();
                std::vector<std::size_t> counts(3, 0);
                double worst = 0.0;
                for (std::size_t i = 0; i < bc_trials; ++i) {
                    const CheatOpening open = cheat_open(bc_bit, rng);
                    ++counts[open.outcome_index / 2];
                    worst = std::max(
                        worst, 1.0 - std::norm(p.c_states[open.outcome_index].inner(
                                   open.bob_state)));
                }
                const ComplexMatrix u = cheating_unitary(pair);
                const Ket mapped =
                    Ket(apply(tensor(u, ComplexMatrix::identity(2)), pair.state0));
                results = {{"outcome_counts", json(counts)},
                           {"max_state_deviation", sig12(worst)},
                           {"concealment", sig12(concealment_check(pair))},
                           {"unitary_residual",
                            sig12(1.0 - std::norm(mapped.inner(pair.state1)))}};
            }
        } else if (c_deutsch->parsed()) {
            command = "deutsch";
            const std::vector<double> raw = parse_doubles(deutsch_table);
            if (raw.size() != 2) throw CLI::ValidationError("--table", "expected two entries");
            const BooleanOracle f(
                1, 1, {static_cast<std::uint64_t>(raw[0]), static_cast<std::uint64_t>(raw[1])});
            config["table"] = deutsch_table;
            results = {{"verdict", deutsch_decide(f) == OracleVerdict::Constant ? "constant"
                                                                                : "balanced"}};
        } else if (c_dj->parsed()) {
            command = "dj";
            Rng rng(seed);
            BooleanOracle f =
                dj_kind == "balanced"
                    ? balanced_oracle(dj_n, rng)
                    : BooleanOracle(dj_n, 1,
                                    std::vector<std::uint64_t>(std::size_t{1} << dj_n,
                                                               dj_kind == "constant1" ? 1 : 0));
            config["n"] = dj_n;
            config["kind"] = dj_kind;
            results = {{"verdict", deutsch_jozsa_decide(f) == OracleVerdict::Constant
                                       ? "constant"
                                       : "balanced"}};
        } else if (c_simon->parsed()) {
            command = "simon";
            if (simon_period >= (std::uint64_t{1} << simon_n) || simon_period == 0)
                throw CLI::ValidationError("--period", "must be in [1, 2^n)");
            Rng rng(seed);
            const std::uint64_t found = simon_find_period(simon_oracle(simon_n, simon_period), rng);
            config["n"] = simon_n;
            config["period"] = simon_period;
            results = {{"recovered_period", found}, {"correct", found == simon_period}};
        } else if (c_shor->parsed()) {
            command = "shor";
            Rng rng(seed);
            const ShorRunReport rep = shor_factor(
                shor_n, shor_s, rng, shor_attempts,
                shor_a == 0 ? std::nullopt : std::optional<std::uint64_t>(shor_a));
            config["N"] = shor_n;
            config["a"] = shor_a;
            config["s"] = shor_s;
            config["attempts"] = shor_attempts;
            results = {{"base", rep.base},
                       {"attempts_used", rep.attempts},
                       {"samples", json(rep.samples)}};
            if (rep.candidate_r) results["candidate_r"] = *rep.candidate_r;
            if (rep.factors)
                results["factors"] = json::array({rep.factors->first, rep.factors->second});
            else
                results["factors"] = json::array();
        }

        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        const json doc = {{"command", command},
                          {"config", config},
                          {"results", results},
                          {"timings_ms", {{"total", sig12(elapsed)}}}};
        emit(doc, format, out_path);
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
