#pragma once

// Occupation-number states and ladder operators.
//
// Bosons:   a+_i |..n_i..> = sqrt(n_i+1) |..n_i+1..>,  a_i |..n_i..> = sqrt(n_i) |..n_i-1..>
// Fermions: a+_i |..n_i..> = (1-n_i)(-1)^s_i |..1-n_i..>,  a_i |..n_i..> = n_i (-1)^s_i |..1-n_i..>
// with s_i = sum_{k<i} n_k. A vanishing prefactor yields the null vector,
// which is flagged explicitly and distinct from the vacuum.

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "fockbridge/basis.hpp"
#include "fockbridge/operator.hpp"

namespace fockbridge {

class OccupationState {
public:
    OccupationState(std::vector<int> occupations, Statistics stat, Complex amplitude = 1.0)
        : occ_(std::move(occupations)), stat_(stat), amplitude_(amplitude) {
        detail::require(!occ_.empty(), "occupation state needs at least one mode");
        for (int n : occ_) {
            detail::require(n >= 0, "occupation numbers must be non-negative");
            detail::require(stat.is_boson() || n <= 1, "fermionic occupation numbers must be 0 or 1");
        }
    }

    static OccupationState vacuum(int K, Statistics stat) { return {std::vector<int>(K, 0), stat}; }

    static OccupationState null(int K, Statistics stat) {
        OccupationState s = vacuum(K, stat);
        s.amplitude_ = 0.0;
        s.null_ = true;
        return s;
    }

    int modes() const { return static_cast<int>(occ_.size()); }
    Statistics statistics() const { return stat_; }
    Complex amplitude() const { return amplitude_; }
    bool is_null() const { return null_; }
    const std::vector<int>& occupations() const { return occ_; }
    int occupation(int i) const { return occ_.at(i - 1); }
    int total_particles() const { return std::accumulate(occ_.begin(), occ_.end(), 0); }

    /// Number of occupied modes strictly before mode i.
    int parity_count(int i) const { return std::accumulate(occ_.begin(), occ_.begin() + (i - 1), 0); }

    bool operator==(const OccupationState&) const = default;

private:
    friend OccupationState create(const OccupationState&, int);
    friend OccupationState annihilate(const OccupationState&, int);

    std::vector<int> occ_;
    Statistics stat_;
    Complex amplitude_;
    bool null_ = false;
};

namespace detail {

inline void require_mode(const OccupationState& s, int i) {
    require(i >= 1 && i <= s.modes(), "mode index " + std::to_string(i) + " out of range 1.." +
                                          std::to_string(s.modes()));
}

inline double fermion_sign(int count) { return (count % 2 == 0) ? 1.0 : -1.0; }

}  // namespace detail

inline OccupationState create(const OccupationState& state, int i) {
    detail::require_mode(state, i);
    if (state.is_null()) return state;
    const int n = state.occupation(i);
    OccupationState out = state;
    if (state.statistics().is_boson()) {
        out.amplitude_ *= std::sqrt(static_cast<double>(n + 1));
        out.occ_[i - 1] = n + 1;
        return out;
    }
    if (n == 1) return OccupationState::null(state.modes(), state.statistics());
    out.amplitude_ *= detail::fermion_sign(state.parity_count(i));
    out.occ_[i - 1] = 1;
    return out;
}

inline OccupationState annihilate(const OccupationState& state, int i) {
    detail::require_mode(state, i);
    if (state.is_null()) return state;
    const int n = state.occupation(i);
    if (n == 0) return OccupationState::null(state.modes(), state.statistics());
    OccupationState out = state;
    if (state.statistics().is_boson()) {
        out.amplitude_ *= std::sqrt(static_cast<double>(n));
        out.occ_[i - 1] = n - 1;
        return out;
    }
    out.amplitude_ *= detail::fermion_sign(state.parity_count(i));
    out.occ_[i - 1] = 0;
    return out;
}

/// Eigenvalue n_i of a+_i a_i on a number state; the state is returned unchanged.
inline std::pair<int, OccupationState> number_op(const OccupationState& state, int i) {
    detail::require_mode(state, i);
    return {state.is_null() ? 0 : state.occupation(i), state};
}

/// Normalized number state a+_i a+_j |0> (divided by sqrt(2) when i = j),
/// with the creation operators applied right to left.
inline OccupationState two_particle_state(int K, Statistics stat, ModePair p) {
    validate_modes(K);
    detail::require(BasisIndexer(K, stat).contains(p),
                    stat.is_fermion() && p.i == p.j ? "two fermions cannot occupy the same mode"
                                                    : "invalid ordered mode pair for a Fock basis state");
    OccupationState s = create(create(OccupationState::vacuum(K, stat), p.j), p.i);
    if (p.i == p.j) s = OccupationState(s.occupations(), stat, s.amplitude() / std::sqrt(2.0));
    return s;
}

/// Ordered mode pair of a two-particle occupation vector.
inline ModePair occupied_pair(const OccupationState& s) {
    detail::require(!s.is_null() && s.total_particles() == 2, "expected a two-particle number state");
    std::vector<int> modes;
    for (int k = 1; k <= s.modes(); ++k)
        for (int c = 0; c < s.occupation(k); ++c) modes.push_back(k);
    return {modes[0], modes[1]};
}

/// Expands a two-particle number state (with amplitude) onto the Fock basis:
/// returns the 0-based Fock index and the coefficient relative to the
/// canonical basis vector built by two_particle_state.
inline std::pair<int, Complex> fock_component(const OccupationState& s) {
    const ModePair p = occupied_pair(s);
    const OccupationState canonical = two_particle_state(s.modes(), s.statistics(), p);
    return {index_fock(s.modes(), s.statistics(), p) - 1, s.amplitude() / canonical.amplitude()};
}

/// Fock-space vector of the number state for pair p.
inline StateVector two_particle_fock_vector(ModePair p, Statistics stat, int K) {
    const OccupationState s = two_particle_state(K, stat, p);
    const auto [index, coefficient] = fock_component(s);
    Vector v = Vector::Zero(fock_dim(K, stat));
    v(index) = coefficient;
    return {Space::fock(K, stat), std::move(v)};
}

/// Two-particle Fock representation of the single-particle basis change
/// b+_i = sum_j U_ji a+_j. Column m holds the a-basis expansion of the
/// m-th b-basis number state.
inline OperatorMatrix mode_change(const DenseMatrix& U, Statistics stat) {
    detail::require(U.rows() == U.cols() && U.rows() >= 1, "mode change matrix must be square");
    const int K = static_cast<int>(U.rows());
    const double unitarity = (U.adjoint() * U - DenseMatrix::Identity(K, K)).cwiseAbs().maxCoeff();
    detail::require(unitarity <= 1e-10, "mode change matrix is not unitary (deviation " +
                                            std::to_string(unitarity) + ")");
    const int dim = fock_dim(K, stat);
    DenseMatrix induced = DenseMatrix::Zero(dim, dim);
    for (const auto& p : enumerate_basis(K, stat)) {
        const int col = index_fock(K, stat, p) - 1;
        const double norm = p.i == p.j ? 1.0 / std::sqrt(2.0) : 1.0;
        for (int a = 1; a <= K; ++a) {
            for (int b = 1; b <= K; ++b) {
                const Complex weight = U(a - 1, p.i - 1) * U(b - 1, p.j - 1) * norm;
                if (weight == Complex(0.0)) continue;
                const OccupationState s = create(create(OccupationState::vacuum(K, stat), b), a);
                if (s.is_null()) continue;
                const auto [row, coefficient] = fock_component(s);
                induced(row, col) += weight * coefficient;
            }
        }
    }
    return {Space::fock(K, stat), std::move(induced)};
}

}  // namespace fockbridge
