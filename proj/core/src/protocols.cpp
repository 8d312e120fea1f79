#include "qinfo/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qinfo/parallel.hpp"

namespace qinfo {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Eigenstates of cos(theta) Z + sin(theta) X for outcomes up (+1) and down (-1).
Ket spin_up(double theta) { return Ket({std::cos(theta / 2), std::sin(theta / 2)}); }
Ket spin_down(double theta) { return Ket({-std::sin(theta / 2), std::cos(theta / 2)}); }

}  // namespace

Ket singlet() { return Ket({0.0, kInvSqrt2, -kInvSqrt2, 0.0}); }

std::vector<Ket> bell_basis() {
    // Order matches the dense-coding messages: Psi-, Psi+, Phi-, Phi+.
    return {
        Ket({0.0, kInvSqrt2, -kInvSqrt2, 0.0}),
        Ket({0.0, kInvSqrt2, kInvSqrt2, 0.0}),
        Ket({kInvSqrt2, 0.0, 0.0, -kInvSqrt2}),
        Ket({kInvSqrt2, 0.0, 0.0, kInvSqrt2}),
    };
}

TeleportResult teleport(const Ket& psi, Rng& rng) {
    if (psi.dim() != 2) throw std::invalid_argument("teleport expects a qubit");
    const Ket state = tensor(psi, singlet());
    const std::vector<Ket> bell = bell_basis();

    // Alice's Bell measurement on qubits 0 and 1.
    std::vector<double> probs(4);
    std::vector<std::vector<cplx>> conditional(4, std::vector<cplx>(2));
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t j = 0; j < 2; ++j) {
            cplx s = 0;
            for (std::size_t i = 0; i < 4; ++i) s += std::conj(bell[k][i]) * state[i * 2 + j];
            conditional[k][j] = s;
            probs[k] += std::norm(s);
        }
    }
    const std::size_t outcome = rng.sample(probs);

    // Outcome-indexed corrections {I, Z, X, ZX}.
    static const std::vector<ComplexMatrix> corrections = {
        ComplexMatrix::identity(2), pauli_z(), pauli_x(), pauli_z() * pauli_x()};
    Ket bob = Ket(conditional[outcome]);
    bob = Ket(apply(corrections[outcome], bob));

    TeleportResult r;
    r.classical_bits = static_cast<unsigned>(outcome);
    r.fidelity = std::norm(psi.inner(bob));
    r.bob_state = std::move(bob);
    return r;
}

unsigned dense_code(unsigned bits) {
    if (bits > 3) throw std::invalid_argument("message must be 2 bits");
    static const std::vector<ComplexMatrix> encodings = {
        ComplexMatrix::identity(2), pauli_z(), pauli_x(), pauli_y() * cplx(0, 1)};
    const Ket sent = Ket(apply(tensor(encodings[bits], ComplexMatrix::identity(2)), singlet()));
    const std::vector<Ket> bell = bell_basis();
    for (unsigned k = 0; k < 4; ++k)
        if (std::norm(bell[k].inner(sent)) > 0.5) return k;
    throw std::logic_error("dense coding produced a non-Bell state");
}

double singlet_same_probability(double theta1, double theta2) {
    const double s = std::sin((theta1 - theta2) / 2);
    return s * s;
}

CorrelationReport singlet_correlation(double theta1, double theta2, std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    const Ket pair = singlet();
    const std::vector<Ket> a = {spin_up(theta1), spin_down(theta1)};
    const std::vector<Ket> b = {spin_up(theta2), spin_down(theta2)};

    // Exact 4-outcome joint distribution, then per-trial draws.
    std::vector<double> joint(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            joint[i * 2 + j] = std::norm(tensor(a[i], b[j]).inner(pair));

    const std::uint64_t base_seed = rng.next_u64();
    std::vector<std::uint8_t> same(n);
    parallel_for(n, [&](std::size_t trial) {
        Rng trial_rng = Rng::derive(base_seed, trial);
        const std::size_t o = trial_rng.sample(joint);
        same[trial] = (o == 0 || o == 3) ? 1 : 0;
    });
    std::size_t count = 0;
    for (std::uint8_t v : same) count += v;

    CorrelationReport r;
    r.theta1 = theta1;
    r.theta2 = theta2;
    r.n_samples = n;
    r.empirical_same = static_cast<double>(count) / static_cast<double>(n);
    r.analytic_same = singlet_same_probability(theta1, theta2);
    return r;
}

double lhv_same_outcome_bound() {
    // Deterministic local assignments over the trine directions; perfect
    // anti-correlation at equal angles forces B(theta) = not A(theta), so the
    // same-outcome indicator at unequal angles is [A(i) != A(j)].
    double best = 0;
    for (unsigned assignment = 0; assignment < 8; ++assignment) {
        const bool a0 = assignment & 1, a1 = assignment & 2, a2 = assignment & 4;
        const double avg = ((a0 != a1) + (a0 != a2) + (a1 != a2)) / 3.0;
        best = std::max(best, avg);
    }
    return best;
}

bool cloning_feasible(const Ket& psi, const Ket& phi) {
    if (psi.dim() != phi.dim()) throw std::invalid_argument("dimension mismatch");
    const double overlap = std::abs(psi.inner(phi));
    return overlap <= kAlgebraicTol || overlap >= 1.0 - kAlgebraicTol;
}

double no_signalling_check(const Ket& bipartite, std::size_t dim_a,
                           const KrausChannel& alice_action) {
    if (!alice_action.trace_preserving)
        throw std::invalid_argument("Alice's action must be trace preserving");
    if (bipartite.dim() % dim_a != 0) throw std::invalid_argument("incompatible factorization");
    const std::size_t dim_b = bipartite.dim() / dim_a;

    const DensityOperator rho = DensityOperator::pure(bipartite);
    const ComplexMatrix before = partial_trace(rho.matrix(), {dim_a, dim_b}, {1});

    std::vector<ComplexMatrix> extended;
    extended.reserve(alice_action.operators.size());
    for (const ComplexMatrix& m : alice_action.operators)
        extended.push_back(tensor(m, ComplexMatrix::identity(dim_b)));
    const DensityOperator after_full = apply_channel(rho, KrausChannel(extended, true));
    const ComplexMatrix after = partial_trace(after_full.matrix(), {dim_a, dim_b}, {1});

    return (after - before).max_abs();
}

}  // namespace qinfo
