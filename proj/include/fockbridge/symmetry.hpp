#pragma once

// Particle exchange, the symmetric/antisymmetric projectors on the
// distinguishable-particle space, and the rectangular symmetrizers that map
// Hilbert vectors onto Fock vectors.

#include <cmath>
#include <sstream>
#include <vector>

#include "fockbridge/basis.hpp"
#include "fockbridge/operator.hpp"

namespace fockbridge {

inline constexpr double kNullProjectionNorm2 = 1e-24;

/// P|i,j> = |j,i>.
inline OperatorMatrix permutation_operator(int K) {
    validate_modes(K);
    std::vector<Triplet> entries;
    entries.reserve(hilbert_dim(K));
    for (const auto& p : enumerate_basis(K)) {
        entries.emplace_back(index_hilbert(K, p.swapped()) - 1, index_hilbert(K, p) - 1, 1.0);
    }
    SparseMatrix m(hilbert_dim(K), hilbert_dim(K));
    m.setFromTriplets(entries.begin(), entries.end());
    return {Space::hilbert(K), std::move(m)};
}

/// S = sum_i |ii><ii| + sum_{i<j} (|ij>+|ji>)(<ij|+<ji|)/2 for bosons,
/// A = sum_{i<j} (|ij>-|ji>)(<ij|-<ji|)/2 for fermions.
inline OperatorMatrix projector(int K, Statistics stat) {
    validate_modes(K);
    const double g = stat.g();
    std::vector<Triplet> entries;
    for (int i = 1; i <= K; ++i) {
        const int ii = index_hilbert(K, {i, i}) - 1;
        if (stat.is_boson()) entries.emplace_back(ii, ii, 1.0);
        for (int j = i + 1; j <= K; ++j) {
            const int ij = index_hilbert(K, {i, j}) - 1;
            const int ji = index_hilbert(K, {j, i}) - 1;
            entries.emplace_back(ij, ij, 0.5);
            entries.emplace_back(ji, ji, 0.5);
            entries.emplace_back(ij, ji, 0.5 * g);
            entries.emplace_back(ji, ij, 0.5 * g);
        }
    }
    SparseMatrix m(hilbert_dim(K), hilbert_dim(K));
    m.setFromTriplets(entries.begin(), entries.end());
    return {Space::hilbert(K), std::move(m)};
}

/// d_g x K^2 map whose row m is the bra of the m-th (anti)symmetric basis
/// state expressed over distinguishable-particle kets.
class RectangularSymmetrizer {
public:
    RectangularSymmetrizer(int K, Statistics stat) : K_(K), stat_(stat) {
        validate_modes(K);
        const double h = 1.0 / std::sqrt(2.0);
        std::vector<Triplet> entries;
        entries.reserve(2 * fock_dim(K, stat));
        for (const auto& p : enumerate_basis(K, stat)) {
            const int row = index_fock(K, stat, p) - 1;
            if (p.i == p.j) {
                entries.emplace_back(row, index_hilbert(K, p) - 1, 1.0);
            } else {
                entries.emplace_back(row, index_hilbert(K, p) - 1, h);
                entries.emplace_back(row, index_hilbert(K, p.swapped()) - 1, stat.g() * h);
            }
        }
        matrix_.resize(fock_dim(K, stat), hilbert_dim(K));
        matrix_.setFromTriplets(entries.begin(), entries.end());
        matrix_.makeCompressed();
    }

    int modes() const { return K_; }
    Statistics statistics() const { return stat_; }
    Space fock_space() const { return Space::fock(K_, stat_); }
    Space hilbert_space() const { return Space::hilbert(K_); }
    const SparseMatrix& matrix() const { return matrix_; }

    /// R v; no normalization.
    Vector project(const Vector& hilbert) const {
        detail::require(hilbert.size() == hilbert_dim(K_), "Hilbert vector has wrong length");
        return matrix_ * hilbert;
    }

    /// R^dagger v; embeds a Fock vector into the Hilbert space.
    Vector embed(const Vector& fock) const {
        detail::require(fock.size() == fock_dim(K_, stat_), "Fock vector has wrong length");
        return matrix_.adjoint() * fock;
    }

private:
    int K_;
    Statistics stat_;
    SparseMatrix matrix_;
};

inline RectangularSymmetrizer rect_symmetrizer(int K, Statistics stat) { return {K, stat}; }

/// Normalized projection of a Hilbert state onto the Fock space of `stat`:
/// alpha_ij = (beta_ij + g beta_ji)/sqrt(2) for i<j, alpha_ii = beta_ii (1+g)/2,
/// then rescaled to unit norm.
inline StateVector symmetrize_state(const StateVector& v, Statistics stat) {
    detail::require(v.space().is_hilbert(), "symmetrize_state expects a Hilbert-space vector");
    const RectangularSymmetrizer sym(v.space().K, stat);
    Vector fock = sym.project(v.amplitudes());
    const double norm2 = fock.squaredNorm();
    if (norm2 < kNullProjectionNorm2) {
        throw NullProjectionError(stat.is_fermion() ? "null projection: Pauli-forbidden initial state"
                                                    : "null projection: state has no symmetric component");
    }
    fock /= std::sqrt(norm2);
    return {sym.fock_space(), std::move(fock)};
}

/// Largest |(PMP - M)| entry of a Hilbert operator, with its location.
struct ExchangeAsymmetry {
    double max_violation = 0.0;
    ModePair bra{1, 1};
    ModePair ket{1, 1};
};

inline ExchangeAsymmetry exchange_asymmetry(const OperatorMatrix& op) {
    detail::require(op.space().is_hilbert(), "exchange symmetry is defined on the Hilbert space");
    const int K = op.space().K;
    ExchangeAsymmetry worst;
    const auto check = [&](int row, int col, Complex value) {
        const ModePair a = unindex_hilbert(K, row + 1);
        const ModePair b = unindex_hilbert(K, col + 1);
        const Complex mirrored = op.coeff(index_hilbert(K, a.swapped()) - 1, index_hilbert(K, b.swapped()) - 1);
        const double diff = std::abs(mirrored - value);
        if (diff > worst.max_violation) worst = {diff, a, b};
    };
    if (op.is_sparse()) {
        const SparseMatrix s = op.sparse();
        for (int r = 0; r < s.outerSize(); ++r)
            for (SparseMatrix::InnerIterator it(s, r); it; ++it) check(r, static_cast<int>(it.col()), it.value());
    } else {
        const DenseMatrix d = op.dense();
        for (int r = 0; r < d.rows(); ++r)
            for (int c = 0; c < d.cols(); ++c) check(r, c, d(r, c));
    }
    return worst;
}

inline void require_exchange_symmetric(const OperatorMatrix& op, double tol, const char* what) {
    const auto asym = exchange_asymmetry(op);
    if (asym.max_violation > tol) {
        std::ostringstream msg;
        msg << what << " is not invariant under particle exchange (PMP != M): element <" << asym.bra.i << ','
            << asym.bra.j << "|M|" << asym.ket.i << ',' << asym.ket.j << "> differs from its exchanged partner by "
            << asym.max_violation;
        throw DomainError(msg.str());
    }
}

}  // namespace fockbridge
