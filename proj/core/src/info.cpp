#include "qinfo/info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace qinfo {

namespace {

constexpr double kZeroEig = 1e-12;

double plogp(double p) { return p > kZeroEig ? -p * std::log2(p) : 0.0; }

double entropy_of(const std::vector<double>& probs) {
    double h = 0;
    for (double p : probs) h += plogp(p);
    return h;
}

void check_distribution(const std::vector<double>& probs) {
    double sum = 0;
    for (double p : probs) {
        if (p < 0 || !std::isfinite(p)) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kAlgebraicTol)
        throw std::invalid_argument("probabilities must sum to 1");
}

}  // namespace

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
    check_distribution(probs_);
}

JointDist::JointDist(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw std::invalid_argument("joint size mismatch");
    check_distribution(entries_);
}

ProbDist JointDist::marginal_x() const {
    std::vector<double> m(rows_);
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = 0; y < cols_; ++y) m[x] += (*this)(x, y);
    return ProbDist(std::move(m));
}

ProbDist JointDist::marginal_y() const {
    std::vector<double> m(cols_);
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = 0; y < cols_; ++y) m[y] += (*this)(x, y);
    return ProbDist(std::move(m));
}

ClassicalChannel::ClassicalChannel(std::size_t inputs, std::size_t outputs,
                                   std::vector<double> conditional)
    : rows_(inputs), cols_(outputs), cond_(std::move(conditional)) {
    if (cond_.size() != rows_ * cols_) throw std::invalid_argument("channel size mismatch");
    for (std::size_t x = 0; x < rows_; ++x) {
        double s = 0;
        for (std::size_t y = 0; y < cols_; ++y) {
            if (cond_[x * cols_ + y] < 0) throw std::invalid_argument("negative probability");
            s += cond_[x * cols_ + y];
        }
        if (std::abs(s - 1.0) > kAlgebraicTol)
            throw std::invalid_argument("channel rows must sum to 1");
    }
}

JointDist ClassicalChannel::joint(const ProbDist& input) const {
    if (input.size() != rows_) throw std::invalid_argument("input size mismatch");
    std::vector<double> j(rows_ * cols_);
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = 0; y < cols_; ++y) j[x * cols_ + y] = input[x] * (*this)(x, y);
    return JointDist(rows_, cols_, std::move(j));
}

double PrefixCode::expected_length(const ProbDist& p) const {
    if (p.size() != codewords.size()) throw std::invalid_argument("size mismatch");
    double l = 0;
    for (std::size_t i = 0; i < p.size(); ++i) l += p[i] * static_cast<double>(codewords[i].size());
    return l;
}

double shannon_entropy(const ProbDist& p) { return entropy_of(p.probs()); }

double joint_entropy(const JointDist& j) {
    double h = 0;
    for (std::size_t x = 0; x < j.rows(); ++x)
        for (std::size_t y = 0; y < j.cols(); ++y) h += plogp(j(x, y));
    return h;
}

double conditional_entropy(const JointDist& j) {
    return joint_entropy(j) - shannon_entropy(j.marginal_y());
}

double mutual_information(const JointDist& j) {
    return shannon_entropy(j.marginal_x()) + shannon_entropy(j.marginal_y()) - joint_entropy(j);
}

double relative_entropy(const ProbDist& p, const ProbDist& q) {
    if (p.size() != q.size()) throw std::invalid_argument("size mismatch");
    double d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= kZeroEig) continue;
        if (q[i] <= kZeroEig) throw std::domain_error("infinite divergence");
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return d;
}

double binary_entropy(double p) { return plogp(p) + plogp(1.0 - p); }

double channel_capacity(const ClassicalChannel& ch, std::size_t grid) {
    if (ch.inputs() != 2) throw std::invalid_argument("capacity search limited to binary inputs");
    if (grid < 100) throw std::invalid_argument("grid must be at least 100");

    auto info = [&](double p) {
        return mutual_information(ch.joint(ProbDist({p, 1.0 - p})));
    };

    double best_p = 0, best = info(0.0);
    for (std::size_t i = 1; i <= grid; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(grid);
        const double v = info(p);
        if (v > best) { best = v; best_p = p; }
    }

    // Golden-section refinement around the best grid point.
    const double step = 1.0 / static_cast<double>(grid);
    double lo = std::max(0.0, best_p - step), hi = std::min(1.0, best_p + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = info(a), fb = info(b);
    while (hi - lo > 1e-4) {
        if (fa < fb) { lo = a; a = b; fa = fb; b = lo + gr * (hi - lo); fb = info(b); }
        else { hi = b; b = a; fb = fa; a = hi - gr * (hi - lo); fa = info(a); }
    }
    return std::max(best, std::max(fa, fb));
}

TypicalSet typical_set(const ProbDist& p, std::size_t n, double delta) {
    const std::size_t k = p.size();
    double count = std::pow(static_cast<double>(k), static_cast<double>(n));
    if (count > static_cast<double>(1 << 20)) throw std::invalid_argument("instance too large");
    if (delta <= 0) throw std::invalid_argument("delta must be positive");

    const double h = shannon_entropy(p);
    const double lo = std::exp2(-static_cast<double>(n) * (h + delta));
    const double hi = std::exp2(-static_cast<double>(n) * (h - delta));

    TypicalSet out{n, delta, {}, 0.0};
    std::vector<std::uint8_t> seq(n, 0);
    const std::size_t total = static_cast<std::size_t>(count);
    for (std::size_t it = 0; it < total; ++it) {
        double prob = 1;
        for (std::uint8_t s : seq) prob *= p[s];
        // closed typicality interval on both sides
        if (prob >= lo * (1 - 1e-12) && prob <= hi * (1 + 1e-12)) {
            out.sequences.push_back(seq);
            out.total_probability += prob;
        }
        for (std::size_t d = n; d-- > 0;) {
            if (++seq[d] < k) break;
            seq[d] = 0;
        }
    }
    return out;
}

PrefixCode huffman_code(const ProbDist& p) {
    const std::size_t k = p.size();
    if (k < 2) throw std::invalid_argument("need at least 2 symbols");

    struct Node { double prob; std::size_t id; int left, right; };
    std::vector<Node> nodes;
    nodes.reserve(2 * k);
    for (std::size_t i = 0; i < k; ++i) nodes.push_back({p[i], i, -1, -1});

    auto cmp = [&](std::size_t a, std::size_t b) {
        if (nodes[a].prob != nodes[b].prob) return nodes[a].prob > nodes[b].prob;
        return nodes[a].id > nodes[b].id;  // deterministic tie-break
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < k; ++i) heap.push(i);
    while (heap.size() > 1) {
        const std::size_t a = heap.top(); heap.pop();
        const std::size_t b = heap.top(); heap.pop();
        nodes.push_back({nodes[a].prob + nodes[b].prob, nodes.size(),
                         static_cast<int>(a), static_cast<int>(b)});
        heap.push(nodes.size() - 1);
    }

    PrefixCode code;
    code.codewords.resize(k);
    // Iterative DFS assigning 0 to the lighter branch.
    std::vector<std::pair<std::size_t, std::string>> stack{{heap.top(), ""}};
    while (!stack.empty()) {
        auto [idx, word] = stack.back();
        stack.pop_back();
        const Node& node = nodes[idx];
        if (node.left < 0) {
            code.codewords[node.id] = word.empty() ? "0" : word;
            continue;
        }
        stack.push_back({static_cast<std::size_t>(node.left), word + "0"});
        stack.push_back({static_cast<std::size_t>(node.right), word + "1"});
    }
    return code;
}

double von_neumann_entropy(const DensityOperator& rho) {
    EigenDecomposition eig = eig_hermitian(rho.matrix());
    return entropy_of(eig.eigenvalues);
}

QuantumEntropies quantum_joint_conditional_mutual(const DensityOperator& rho_ab,
                                                  std::size_t dim_a, std::size_t dim_b) {
    if (dim_a * dim_b != rho_ab.dim()) throw std::invalid_argument("incompatible factorization");
    const DensityOperator rho_a(partial_trace(rho_ab.matrix(), {dim_a, dim_b}, {0}));
    const DensityOperator rho_b(partial_trace(rho_ab.matrix(), {dim_a, dim_b}, {1}));
    QuantumEntropies q{};
    q.s_a = von_neumann_entropy(rho_a);
    q.s_b = von_neumann_entropy(rho_b);
    q.s_ab = von_neumann_entropy(rho_ab);
    q.s_a_given_b = q.s_ab - q.s_b;
    q.s_mutual = q.s_a + q.s_b - q.s_ab;
    return q;
}

double holevo_chi(const Ensemble& e) {
    double avg = 0;
    for (std::size_t i = 0; i < e.weights.size(); ++i)
        avg += e.weights[i] * von_neumann_entropy(e.members[i]);
    return std::max(von_neumann_entropy(density_from_ensemble(e)) - avg, 0.0);
}

double measurement_mutual_info(const Ensemble& e, const Povm& p) {
    const std::size_t d = e.members.front().dim();
    if (p.effects.front().rows() != d) throw std::invalid_argument("dimension mismatch");
    std::vector<double> joint(e.weights.size() * p.effects.size());
    for (std::size_t x = 0; x < e.weights.size(); ++x)
        for (std::size_t y = 0; y < p.effects.size(); ++y) {
            const double pr = (e.members[x].matrix() * p.effects[y]).trace().real();
            joint[x * p.effects.size() + y] = e.weights[x] * std::max(pr, 0.0);
        }
    return mutual_information(JointDist(e.weights.size(), p.effects.size(), std::move(joint)));
}

TypicalSubspace schumacher_typical_projector(const DensityOperator& rho, std::size_t n,
                                             double delta) {
    const std::size_t d = rho.dim();
    const double big = std::pow(static_cast<double>(d), static_cast<double>(n));
    if (big > 4096.0) throw std::invalid_argument("instance too large");
    const std::size_t full = static_cast<std::size_t>(big);

    EigenDecomposition eig = eig_hermitian(rho.matrix());
    const double s = entropy_of(eig.eigenvalues);
    const double budget_f = std::exp2(static_cast<double>(n) * (s + delta));
    const std::size_t budget =
        std::min<std::size_t>(full, static_cast<std::size_t>(std::floor(budget_f * (1 + 1e-12))));

    // Rank all eigenvalue products, most probable first.
    struct Item { double prob; std::size_t index; };
    std::vector<Item> items;
    items.reserve(full);
    for (std::size_t m = 0; m < full; ++m) {
        double prob = 1;
        std::size_t rest = m;
        for (std::size_t f = 0; f < n; ++f) {
            prob *= std::max(eig.eigenvalues[rest % d], 0.0);
            rest /= d;
        }
        items.push_back({prob, m});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return a.prob > b.prob;
    });

    TypicalSubspace out{n, delta, ComplexMatrix(full, full), 0, 0.0, {}};
    for (const Item& it : items) {
        if (out.dimension >= budget || it.prob <= 0) break;
        // Product of eigenvectors, factor 0 most significant.
        std::vector<std::size_t> digits(n);
        std::size_t rest = it.index;
        for (std::size_t f = 0; f < n; ++f) { digits[n - 1 - f] = rest % d; rest /= d; }
        std::vector<cplx> amps{1.0};
        for (std::size_t f = 0; f < n; ++f) {
            const Ket& v = eig.eigenvectors[digits[f]];
            std::vector<cplx> next(amps.size() * d);
            for (std::size_t i = 0; i < amps.size(); ++i)
                for (std::size_t j = 0; j < d; ++j) next[i * d + j] = amps[i] * v[j];
            amps = std::move(next);
        }
        Ket basis_state(std::move(amps));
        for (std::size_t i = 0; i < full; ++i)
            for (std::size_t j = 0; j < full; ++j)
                out.projector(i, j) += basis_state[i] * std::conj(basis_state[j]);
        out.basis.push_back(std::move(basis_state));
        out.dimension += 1;
        out.total_probability += it.prob;
    }
    return out;
}

SchumacherReport schumacher_roundtrip(const std::vector<double>& weights,
                                      const std::vector<Ket>& states, std::size_t n,
                                      double delta, Rng& rng, std::size_t n_samples) {
    if (n > 10) throw std::invalid_argument("instance too large");
    check_distribution(weights);
    if (weights.size() != states.size()) throw std::invalid_argument("size mismatch");

    const DensityOperator rho = density_from_ensemble(Ensemble::of_pure(weights, states));
    const TypicalSubspace sub = schumacher_typical_projector(rho, n, delta);
    const Ket& junk = sub.basis.front();

    double fid_sum = 0;
    for (std::size_t trial = 0; trial < n_samples; ++trial) {
        Ket block = states[rng.sample(weights)];
        for (std::size_t f = 1; f < n; ++f) block = tensor(block, states[rng.sample(weights)]);
        // q = <block|P|block>
        double q = 0;
        for (const Ket& b : sub.basis) q += std::norm(b.inner(block));
        q = std::clamp(q, 0.0, 1.0);
        if (rng.next_double() < q) {
            fid_sum += q;  // fidelity of the renormalized projection
        } else {
            fid_sum += std::norm(junk.inner(block));
        }
    }

    SchumacherReport report{};
    report.subspace_dimension = sub.dimension;
    report.n_samples = n_samples;
    const double bits = std::max(std::ceil(std::log2(static_cast<double>(sub.dimension))), 1.0);
    report.qubit_rate = bits / static_cast<double>(n);
    report.avg_fidelity = fid_sum / static_cast<double>(n_samples);
    return report;
}

}  // namespace qinfo
