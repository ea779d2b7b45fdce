#pragma once

// Unitary evolution of two-particle states and the observables evaluated on
// them: occupation numbers and normalized von Neumann entropy.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fockbridge/basis.hpp"
#include "fockbridge/operator.hpp"
#include "fockbridge/parallel.hpp"
#include "fockbridge/reshape.hpp"

namespace fockbridge {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kEntropyCutoff = 1e-14;

struct EvolutionPlan {
    OperatorMatrix hamiltonian;
    std::vector<double> times;
    StateVector initial;

    void validate() const {
        detail::require(hamiltonian.space() == initial.space(),
                        "initial state lives on " + initial.space().name() + " but the Hamiltonian on " +
                            hamiltonian.space().name());
        const double herm = hamiltonian.hermiticity_error();
        detail::require(herm <= kHermitianTolerance,
                        "Hamiltonian is not Hermitian (max deviation " + std::to_string(herm) + ")");
        detail::require(std::abs(initial.norm() - 1.0) <= kNormTolerance,
                        "initial state must have unit norm, got " + std::to_string(initial.norm()));
        for (std::size_t t = 0; t < times.size(); ++t) {
            detail::require(std::isfinite(times[t]) && times[t] >= 0.0, "evolution times must be non-negative");
            detail::require(t == 0 || times[t] > times[t - 1], "evolution times must be strictly increasing");
        }
    }
};

/// exp(-iHt) from a single eigendecomposition of H.
class Propagator {
public:
    explicit Propagator(const OperatorMatrix& hamiltonian) : space_(hamiltonian.space()) {
        const double herm = hamiltonian.hermiticity_error();
        detail::require(herm <= kHermitianTolerance,
                        "Hamiltonian is not Hermitian (max deviation " + std::to_string(herm) + ")");
        if (hamiltonian.dim() == 0) return;
        const DenseMatrix h = hamiltonian.dense();
        Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(0.5 * (h + h.adjoint()));
        energies_ = solver.eigenvalues();
        modes_ = solver.eigenvectors();
    }

    const Space& space() const { return space_; }
    const Eigen::VectorXd& energies() const { return energies_; }

    StateVector apply(const StateVector& psi, double t) const {
        detail::require(psi.space() == space_, "state and propagator live on different spaces");
        if (t == 0.0) return psi;
        const Vector coefficients = modes_.adjoint() * psi.amplitudes();
        Vector phased(coefficients.size());
        for (Eigen::Index k = 0; k < coefficients.size(); ++k)
            phased(k) = std::polar(1.0, -energies_(k) * t) * coefficients(k);
        return {space_, modes_ * phased};
    }

private:
    Space space_;
    Eigen::VectorXd energies_;
    DenseMatrix modes_;
};

/// |psi(t)> = exp(-iHt)|psi(0)> at every requested time (units of hbar = 1).
inline std::vector<StateVector> evolve(const EvolutionPlan& plan) {
    plan.validate();
    const Propagator propagator(plan.hamiltonian);
    const int count = static_cast<int>(plan.times.size());
    std::vector<StateVector> states(count, plan.initial);
    parallel_for(
        count,
        [&](int begin, int end) {
            for (int t = begin; t < end; ++t) states[t] = propagator.apply(plan.initial, plan.times[t]);
        },
        8);
    return states;
}

inline Complex expectation(const OperatorMatrix& op, const StateVector& psi) {
    detail::require(op.space() == psi.space(), "operator and state live on different spaces");
    return psi.amplitudes().dot(op.apply(psi.amplitudes()));
}

/// |psi><psi|. Inputs within 1e-8 of unit norm are rescaled exactly to unit norm.
inline DensityMatrix density_from_state(const StateVector& psi) {
    const double norm = psi.norm();
    detail::require(std::abs(norm - 1.0) <= 1e-8, "density_from_state needs a unit-norm state, got norm " +
                                                      std::to_string(norm));
    const Vector v = psi.amplitudes() / norm;
    return {psi.space(), v * v.adjoint()};
}

/// <n_k> for k = 1..K.
///   Hilbert: 2 sum_i rho_{ik;ik}
///   Fock:    2 rho_{kk;kk} + sum_{i<k} rho_{ik;ik} + sum_{j>k} rho_{kj;kj}
///            (no diagonal term for fermions)
inline std::vector<double> occupation_numbers(const DensityMatrix& rho) {
    const Space& space = rho.space();
    const int K = space.K;
    const auto idx = space.indexer();
    const auto diag = [&](ModePair p) { return rho.matrix()(idx.index(p) - 1, idx.index(p) - 1).real(); };
    std::vector<double> n(K, 0.0);
    for (int k = 1; k <= K; ++k) {
        if (space.is_hilbert()) {
            for (int i = 1; i <= K; ++i) n[k - 1] += 2.0 * diag({i, k});
            continue;
        }
        if (space.statistics()->is_boson()) n[k - 1] += 2.0 * diag({k, k});
        for (int i = 1; i < k; ++i) n[k - 1] += diag({i, k});
        for (int j = k + 1; j <= K; ++j) n[k - 1] += diag({k, j});
    }
    return n;
}

/// -Tr[rho ln rho] in nats.
inline double von_neumann_entropy_nats(const DensityMatrix& rho) {
    const Eigen::VectorXd spectrum = rho.spectrum();
    double s = 0.0;
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
        const double p = spectrum(k);
        detail::require(p >= -kDensityTolerance, "density matrix has negative eigenvalue " + std::to_string(p));
        if (p < kEntropyCutoff) continue;
        s -= p * std::log(p);
    }
    return s;
}

/// Entropy normalized by ln(d) of the space the matrix is expressed in
/// (d_g for Fock, K^2 for Hilbert); 0 when d = 1.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const int d = rho.dim();
    if (d <= 1) return 0.0;
    return von_neumann_entropy_nats(rho) / std::log(static_cast<double>(d));
}

}  // namespace fockbridge
