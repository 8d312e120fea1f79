#include "qinfo/circuits.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qinfo {

namespace {

Ket apply_gate(const Ket& state, const ComplexMatrix& u, const std::vector<std::size_t>& targets,
               std::size_t n_qubits) {
    const std::size_t k = targets.size();
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t block = std::size_t{1} << k;
    if (u.rows() != block || u.cols() != block)
        throw std::invalid_argument("gate arity does not match target count");

    // Bit position of each target (qubit 0 is the most significant bit).
    std::vector<std::size_t> pos(k);
    std::size_t tmask = 0;
    for (std::size_t t = 0; t < k; ++t) {
        if (targets[t] >= n_qubits) throw std::invalid_argument("target out of range");
        pos[t] = n_qubits - 1 - targets[t];
        if (tmask & (std::size_t{1} << pos[t])) throw std::invalid_argument("duplicate target");
        tmask |= std::size_t{1} << pos[t];
    }

    auto scatter = [&](std::size_t j) {
        std::size_t out = 0;
        for (std::size_t t = 0; t < k; ++t)
            if (j & (std::size_t{1} << (k - 1 - t))) out |= std::size_t{1} << pos[t];
        return out;
    };

    std::vector<cplx> out(state.amplitudes());
    std::vector<cplx> gathered(block);
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        for (std::size_t j = 0; j < block; ++j) gathered[j] = out[base | scatter(j)];
        for (std::size_t i = 0; i < block; ++i) {
            cplx s = 0;
            for (std::size_t j = 0; j < block; ++j) s += u(i, j) * gathered[j];
            out[base | scatter(i)] = s;
        }
    }
    return Ket(std::move(out));
}

std::uint64_t dot_gf2(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(std::popcount(a & b) & 1);
}

}  // namespace

Gate Gate::custom_unitary(ComplexMatrix u, std::vector<std::size_t> targets) {
    if (!u.is_unitary(kAlgebraicTol)) throw std::invalid_argument("gate matrix is not unitary");
    if (u.rows() != (std::size_t{1} << targets.size()))
        throw std::invalid_argument("gate arity does not match target count");
    return {GateKind::Custom, std::move(targets), std::move(u)};
}

ComplexMatrix Gate::matrix() const {
    switch (kind) {
        case GateKind::H: return hadamard();
        case GateKind::X: return pauli_x();
        case GateKind::Y: return pauli_y();
        case GateKind::Z: return pauli_z();
        case GateKind::S: return {{1.0, 0.0}, {0.0, cplx(0, 1)}};
        case GateKind::T: {
            const double a = std::numbers::pi / 4;
            return {{1.0, 0.0}, {0.0, cplx(std::cos(a), std::sin(a))}};
        }
        case GateKind::CNOT:
            return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
        case GateKind::Custom: return custom;
    }
    throw std::logic_error("unknown gate kind");
}

BooleanOracle::BooleanOracle(std::size_t in, std::size_t out, std::vector<std::uint64_t> tbl)
    : n_in(in), n_out(out), table(std::move(tbl)) {
    if (table.size() != (std::size_t{1} << n_in))
        throw std::invalid_argument("oracle table length must be 2^n_in");
    for (std::uint64_t v : table)
        if (v >> n_out) throw std::invalid_argument("oracle value exceeds n_out bits");
}

Ket run_circuit(const Circuit& c, const Ket& input) {
    if (input.dim() != (std::size_t{1} << c.n_qubits))
        throw std::invalid_argument("dimension mismatch");
    Ket state = input;
    for (const Gate& g : c.gates) state = apply_gate(state, g.matrix(), g.targets, c.n_qubits);
    return state;
}

ComplexMatrix oracle_unitary(const BooleanOracle& f) {
    if (f.n_in + f.n_out > 12) throw std::invalid_argument("instance too large");
    const std::size_t din = std::size_t{1} << f.n_in;
    const std::size_t dout = std::size_t{1} << f.n_out;
    ComplexMatrix u(din * dout, din * dout);
    for (std::size_t x = 0; x < din; ++x)
        for (std::size_t y = 0; y < dout; ++y)
            u(x * dout + (y ^ f.table[x]), x * dout + y) = 1.0;
    return u;
}

OracleVerdict deutsch_decide(const BooleanOracle& f) {
    if (f.n_in != 1 || f.n_out != 1) throw std::invalid_argument("need a 1-bit oracle");
    return deutsch_jozsa_decide(f);
}

OracleVerdict deutsch_jozsa_decide(const BooleanOracle& f) {
    if (f.n_out != 1) throw std::invalid_argument("need a 1-bit-output oracle");
    const std::size_t n = f.n_in;
    Circuit c{n + 1, {}};
    for (std::size_t q = 0; q <= n; ++q) c.gates.push_back(Gate::h(q));
    std::vector<std::size_t> all(n + 1);
    for (std::size_t q = 0; q <= n; ++q) all[q] = q;
    c.gates.push_back(Gate::custom_unitary(oracle_unitary(f), all));
    for (std::size_t q = 0; q < n; ++q) c.gates.push_back(Gate::h(q));

    // Input register |0...0>, output register |1>.
    const Ket final_state = run_circuit(c, Ket::basis(std::size_t{1} << (n + 1), 1));
    // Probability that the input register reads all zeros.
    double p0 = std::norm(final_state[0]) + std::norm(final_state[1]);
    return p0 > 0.5 ? OracleVerdict::Constant : OracleVerdict::Balanced;
}

std::vector<double> simon_sample_distribution(const BooleanOracle& f) {
    if (f.n_in > 8) throw std::invalid_argument("instance too large");
    const std::size_t dim = std::size_t{1} << f.n_in;
    // Group inputs by image value; the output register is traced, not measured.
    std::map<std::uint64_t, std::vector<std::size_t>> groups;
    for (std::size_t x = 0; x < dim; ++x) groups[f.table[x]].push_back(x);

    std::vector<double> probs(dim);
    const double norm = 1.0 / static_cast<double>(dim);
    for (std::size_t y = 0; y < dim; ++y) {
        double p = 0;
        for (const auto& [z, xs] : groups) {
            double amp = 0;
            for (std::size_t x : xs) amp += dot_gf2(x, y) ? -norm : norm;
            p += amp * amp;
        }
        probs[y] = p;
    }
    return probs;
}

std::optional<std::uint64_t> gf2_solve(const Gf2System& sys, std::size_t n) {
    std::vector<std::uint64_t> rows = sys.equations;
    std::vector<int> pivot_col(n, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - col);
        std::size_t sel = rank;
        while (sel < rows.size() && !(rows[sel] & bit)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
        pivot_col[rank] = static_cast<int>(col);
        ++rank;
    }
    if (rank != n - 1) return std::nullopt;

    // Single free column: set it to 1 and read the pivots.
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;

    std::uint64_t x = std::uint64_t{1} << (n - 1 - free_col);
    for (std::size_t r = 0; r < rank; ++r)
        if (dot_gf2(rows[r], x)) x |= std::uint64_t{1} << (n - 1 - pivot_col[r]);
    return x;
}

std::uint64_t simon_find_period(const BooleanOracle& f, Rng& rng) {
    if (f.n_in != f.n_out) throw std::invalid_argument("Simon oracle must have n_out == n_in");
    const std::size_t n = f.n_in;
    const std::vector<double> probs = simon_sample_distribution(f);

    Gf2System sys;
    std::vector<std::uint64_t> echelon;
    const std::size_t cap = 50 * n;
    for (std::size_t it = 0; echelon.size() < n - 1; ++it) {
        if (it >= cap) throw std::runtime_error("sampling failed to reach rank");
        const std::uint64_t y = rng.sample(probs);
        sys.equations.push_back(y);
        // Reduce against the collected rows; keep only independent samples.
        std::uint64_t reduced = y;
        bool changed = true;
        while (changed && reduced) {
            changed = false;
            for (std::uint64_t row : echelon) {
                const std::uint64_t lead = std::uint64_t{1} << (63 - std::countl_zero(row));
                if (reduced & lead) { reduced ^= row; changed = true; }
            }
        }
        if (reduced) echelon.push_back(reduced);
    }

    const std::optional<std::uint64_t> r = gf2_solve(Gf2System{echelon}, n);
    if (!r) throw std::runtime_error("sampling failed to reach rank");
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x)
        if (f.table[x] != f.table[x ^ *r])
            throw std::invalid_argument("oracle is not periodic with the recovered period");
    return *r;
}

ComplexMatrix dft_mod_s(std::size_t s) {
    if (s == 0 || s > 1024) throw std::invalid_argument("register size out of range");
    ComplexMatrix u(s, s);
    const double norm = 1.0 / std::sqrt(static_cast<double>(s));
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(x * y % s) /
                                 static_cast<double>(s);
            u(x, y) = cplx(std::cos(phase) * norm, std::sin(phase) * norm);
        }
    return u;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

std::vector<double> shor_order_distribution(std::uint64_t n_mod, std::uint64_t a, std::size_t s) {
    if (n_mod > 64 || s > 1024) throw std::invalid_argument("instance too large");
    if (gcd_u64(a % n_mod, n_mod) != 1) throw std::invalid_argument("a must be coprime to N");

    // Group x by f(x) = a^x mod N, then Fourier-transform each branch.
    std::map<std::uint64_t, std::vector<std::size_t>> groups;
    std::uint64_t v = 1 % n_mod;
    for (std::size_t x = 0; x < s; ++x) {
        groups[v].push_back(x);
        v = v * (a % n_mod) % n_mod;
    }

    std::vector<double> probs(s);
    const double norm = 1.0 / static_cast<double>(s);
    for (std::size_t c = 0; c < s; ++c) {
        double p = 0;
        for (const auto& [z, xs] : groups) {
            cplx amp = 0;
            for (std::size_t x : xs) {
                const double phase = 2.0 * std::numbers::pi *
                                     static_cast<double>(x * c % s) / static_cast<double>(s);
                amp += cplx(std::cos(phase), std::sin(phase));
            }
            p += std::norm(amp * norm);
        }
        probs[c] = p;
    }
    return probs;
}

std::uint64_t shor_order_sample(std::uint64_t n_mod, std::uint64_t a, std::size_t s, Rng& rng) {
    return rng.sample(shor_order_distribution(n_mod, a, s));
}

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_prime_power(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::uint64_t m = n;
        while (m % p == 0) m /= p;
        return m == 1;
    }
    return false;
}

}  // namespace

ShorRunReport shor_factor(std::uint64_t n_mod, std::size_t s, Rng& rng, std::size_t max_attempts,
                          std::optional<std::uint64_t> forced_a) {
    if (n_mod > 64 || n_mod % 2 == 0 || is_prime(n_mod) || is_prime_power(n_mod))
        throw std::invalid_argument("N must be an odd composite that is not a prime power");

    ShorRunReport report;
    report.modulus = n_mod;
    report.register_size = s;
    while (report.attempts < max_attempts) {
        ++report.attempts;
        std::uint64_t a;
        if (forced_a) {
            a = *forced_a;
            if (gcd_u64(a, n_mod) != 1) throw std::invalid_argument("a must be coprime to N");
        } else {
            do { a = 2 + rng.next_below(n_mod - 3); } while (gcd_u64(a, n_mod) != 1);
        }
        report.base = a;

        const std::uint64_t c = shor_order_sample(n_mod, a, s, rng);
        report.samples.push_back(c);
        // Cancel c/s to lowest terms; the denominator is the candidate period.
        const std::uint64_t r = s / gcd_u64(c == 0 ? s : c, s);
        report.candidate_r = r;
        // Verify the candidate really is a period of a; a proper divisor of the
        // order (from an unlucky c) is rejected and another sample is drawn.
        if (pow_mod(a, r, n_mod) != 1) continue;
        if (r % 2 != 0) continue;
        const std::uint64_t half = pow_mod(a, r / 2, n_mod);
        if (half == n_mod - 1) continue;
        const std::uint64_t f1 = gcd_u64((half + n_mod - 1) % n_mod, n_mod);
        const std::uint64_t f2 = gcd_u64((half + 1) % n_mod, n_mod);
        for (std::uint64_t f : {f1, f2}) {
            if (f > 1 && f < n_mod && n_mod % f == 0) {
                report.factors = {f, n_mod / f};
                return report;
            }
        }
    }
    return report;
}

}  // namespace qinfo
