// Density operators, ensembles, purification, fidelity, generalized
// measurement (Kraus/POVM), quantum operations, and remote steering.

#pragma once

#include <optional>

#include "qinfo/decomposition.hpp"
#include "qinfo/matrix.hpp"
#include "qinfo/rng.hpp"

namespace qinfo {

// Positive operator with unit trace.  Eigenvalues in [-1e-10, 0) are
// clamped to zero with renormalization (Jacobi roundoff).
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix m);
    static DensityOperator pure(const Ket& psi);
    static DensityOperator maximally_mixed(std::size_t dim);

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

// Weighted mixture of (possibly mixed) states realizing a density operator.
struct Ensemble {
    std::vector<double> weights;
    std::vector<DensityOperator> members;

    Ensemble(std::vector<double> w, std::vector<DensityOperator> m);
    static Ensemble of_pure(const std::vector<double>& weights, const std::vector<Ket>& states);
};

// Operator list {M_m}; trace preserving means sum M^dag M = I, otherwise
// sum M^dag M <= I is required.
struct KrausChannel {
    std::vector<ComplexMatrix> operators;
    bool trace_preserving;

    KrausChannel(std::vector<ComplexMatrix> ops, bool trace_preserving);
    static KrausChannel unitary(const ComplexMatrix& u);
    static KrausChannel projective(const std::vector<ComplexMatrix>& projectors);
};

// Positive operators summing to the identity.
struct Povm {
    std::vector<ComplexMatrix> effects;
    explicit Povm(std::vector<ComplexMatrix> effects);
};

struct MeasurementRecord {
    std::size_t outcome;
    double probability;
    DensityOperator post_state;
};

DensityOperator density_from_ensemble(const Ensemble& e);

// Canonical purification sum_i sqrt(p_i) |v_i>|i> on a dim x dim space;
// the ancilla is the second factor.
Ket purify(const DensityOperator& rho);

double fidelity_pure(const DensityOperator& rho, const Ket& psi);
double fidelity_mixed(const DensityOperator& rho, const DensityOperator& sigma);

// Outcome probabilities Tr(M rho M^dag), indexed by channel operator.
std::vector<double> outcome_distribution(const DensityOperator& rho, const KrausChannel& channel);

// Selective measurement of a fixed outcome; errors when the outcome
// probability is below tolerance.
MeasurementRecord measure(const DensityOperator& rho, const KrausChannel& channel,
                          std::size_t outcome);
// Sampling form: outcome drawn from the exact distribution with one draw.
MeasurementRecord measure(const DensityOperator& rho, const KrausChannel& channel, Rng& rng);

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& channel);

// Trace-preserving channel with M_m = sqrt(E_m).
KrausChannel povm_to_kraus(const Povm& p);

// Three-outcome POVM that discriminates |0> from |+> unambiguously:
// outcome 0 certifies |0>, outcome 1 certifies |+>, outcome 2 is inconclusive.
Povm unambiguous_discrimination_povm();

// Conditional Bob-side states when Alice measures her factor of a bipartite
// pure state in the given orthonormal basis.
Ensemble steer(const Ket& bipartite, std::size_t dim_a, const std::vector<Ket>& alice_basis);

}  // namespace qinfo
