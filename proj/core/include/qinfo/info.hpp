// Classical and quantum information measures, typical sets, prefix coding,
// and small-block-length compression.  All logarithms are base 2; entropies
// are in bits (qubits for the quantum measures).

#pragma once

#include <cstdint>
#include <string>

#include "qinfo/state.hpp"

namespace qinfo {

// Probability distribution; validated to sum to 1.
class ProbDist {
public:
    explicit ProbDist(std::vector<double> probs);
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

// Joint distribution p(x, y); rows index X, columns Y.
class JointDist {
public:
    JointDist(std::size_t rows, std::size_t cols, std::vector<double> entries);
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t x, std::size_t y) const { return entries_[x * cols_ + y]; }

    ProbDist marginal_x() const;
    ProbDist marginal_y() const;

private:
    std::size_t rows_, cols_;
    std::vector<double> entries_;
};

// Conditional probabilities p(y|x); each row sums to 1.
class ClassicalChannel {
public:
    ClassicalChannel(std::size_t inputs, std::size_t outputs, std::vector<double> conditional);
    std::size_t inputs() const { return rows_; }
    std::size_t outputs() const { return cols_; }
    double operator()(std::size_t x, std::size_t y) const { return cond_[x * cols_ + y]; }

    JointDist joint(const ProbDist& input) const;

private:
    std::size_t rows_, cols_;
    std::vector<double> cond_;
};

struct PrefixCode {
    std::vector<std::string> codewords;  // "0"/"1" text, one per symbol
    double expected_length(const ProbDist& p) const;
};

struct TypicalSet {
    std::size_t n;
    double delta;
    std::vector<std::vector<std::uint8_t>> sequences;
    double total_probability;
};

struct TypicalSubspace {
    std::size_t n;
    double delta;
    ComplexMatrix projector;
    std::size_t dimension;
    double total_probability;  // Tr(P rho^(x)n)
    // Basis of the subspace as product states over the source eigenbasis;
    // the first entry is the most probable one (used as the junk state).
    std::vector<Ket> basis;
};

struct SchumacherReport {
    double qubit_rate;
    double avg_fidelity;
    std::size_t subspace_dimension;
    std::size_t n_samples;
};

struct QuantumEntropies {
    double s_a, s_b, s_ab, s_a_given_b, s_mutual;
};

double shannon_entropy(const ProbDist& p);
double joint_entropy(const JointDist& j);
double conditional_entropy(const JointDist& j);   // H(X|Y)
double mutual_information(const JointDist& j);    // H(X:Y)
double relative_entropy(const ProbDist& p, const ProbDist& q);
double binary_entropy(double p);

// Max of H(X:Y) over binary input distributions: uniform grid plus
// golden-section refinement.  Only binary-input channels are supported.
double channel_capacity(const ClassicalChannel& ch, std::size_t grid);

TypicalSet typical_set(const ProbDist& p, std::size_t n, double delta);

// Minimum-expected-length prefix code (Huffman construction).
PrefixCode huffman_code(const ProbDist& p);

double von_neumann_entropy(const DensityOperator& rho);
QuantumEntropies quantum_joint_conditional_mutual(const DensityOperator& rho_ab,
                                                  std::size_t dim_a, std::size_t dim_b);
double holevo_chi(const Ensemble& e);
double measurement_mutual_info(const Ensemble& e, const Povm& p);

// Projector onto the high-probability span of eigenstate products of
// rho^(x)n, filled in decreasing probability up to 2^{n(S+delta)} dimensions.
TypicalSubspace schumacher_typical_projector(const DensityOperator& rho, std::size_t n,
                                             double delta);

// Compress/decompress sampled n-blocks from a pure-state ensemble through
// the typical subspace and report the average fidelity.
SchumacherReport schumacher_roundtrip(const std::vector<double>& weights,
                                      const std::vector<Ket>& states, std::size_t n,
                                      double delta, Rng& rng, std::size_t n_samples = 1000);

}  // namespace qinfo
