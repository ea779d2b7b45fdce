#pragma once

// Two-particle hopping operator on a 1-D chain, in the distinguishable-particle
// basis and in the bosonic/fermionic Fock bases.
//
//   T^H = h (x) 1 + 1 (x) h,   h = -J sum_i (|i><i+1| + |i+1><i|)
//   T^F = -J sum_i (c+_i c_{i+1} + c+_{i+1} c_i)
//
// Open chains sum bonds i = 1..K-1; periodic chains add the bond (K, 1).

#include <cmath>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "fockbridge/basis.hpp"
#include "fockbridge/fock_ladder.hpp"
#include "fockbridge/operator.hpp"

namespace fockbridge {

enum class Boundary { Open, Periodic };

struct LatticeSpec {
    int K = 2;
    double J = 1.0;
    Boundary bc = Boundary::Open;
    /// On-site interaction, U sum_i n_i(n_i - 1)/2. Zero when absent.
    std::optional<double> U;

    void validate() const {
        detail::require(K >= 2, "lattice needs at least 2 sites, got K=" + std::to_string(K));
        validate_modes(K);
        detail::require(std::isfinite(J), "hopping amplitude J must be finite");
        detail::require(!(bc == Boundary::Periodic && K == 2),
                        "periodic boundary with K=2 double-counts the single bond");
        detail::require(!U || std::isfinite(*U), "interaction U must be finite");
    }

    /// Nearest-neighbour bonds (i, i+1), 1-based, wrapping to (K, 1) when periodic.
    std::vector<std::pair<int, int>> bonds() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i < K; ++i) out.emplace_back(i, i + 1);
        if (bc == Boundary::Periodic) out.emplace_back(K, 1);
        return out;
    }
};

inline OperatorMatrix kinetic_hilbert(const LatticeSpec& spec) {
    spec.validate();
    const int K = spec.K;
    std::vector<Triplet> entries;
    const auto hop = [&](int from, int to) {
        // particle 1 hops, particle 2 spectator; and vice versa
        for (int s = 1; s <= K; ++s) {
            entries.emplace_back(index_hilbert(K, {to, s}) - 1, index_hilbert(K, {from, s}) - 1, -spec.J);
            entries.emplace_back(index_hilbert(K, {s, to}) - 1, index_hilbert(K, {s, from}) - 1, -spec.J);
        }
    };
    for (const auto& [a, b] : spec.bonds()) {
        hop(a, b);
        hop(b, a);
    }
    SparseMatrix m(hilbert_dim(K), hilbert_dim(K));
    m.setFromTriplets(entries.begin(), entries.end());
    return {Space::hilbert(K), std::move(m)};
}

/// Built by acting with c+_to c_from on every Fock basis state; fermionic
/// boundary signs come out of the ladder-operator phases.
inline OperatorMatrix kinetic_fock(const LatticeSpec& spec, Statistics stat) {
    spec.validate();
    const int K = spec.K;
    std::vector<Triplet> entries;
    for (const auto& p : enumerate_basis(K, stat)) {
        const int col = index_fock(K, stat, p) - 1;
        const OccupationState ket = two_particle_state(K, stat, p);
        for (const auto& [a, b] : spec.bonds()) {
            for (const auto& [to, from] : {std::pair{a, b}, std::pair{b, a}}) {
                const OccupationState moved = create(annihilate(ket, from), to);
                if (moved.is_null()) continue;
                const auto [row, coefficient] = fock_component(moved);
                entries.emplace_back(row, col, -spec.J * coefficient);
            }
        }
    }
    const int dim = fock_dim(K, stat);
    SparseMatrix m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return {Space::fock(K, stat), std::move(m)};
}

/// Kinetic term plus U on doubly occupied sites (bosons only; spinless
/// fermions cannot share a site).
inline OperatorMatrix hubbard_hamiltonian(const LatticeSpec& spec, Statistics stat) {
    const OperatorMatrix kinetic = kinetic_fock(spec, stat);
    const double U = spec.U.value_or(0.0);
    if (U == 0.0 || stat.is_fermion()) return kinetic;
    SparseMatrix h = kinetic.sparse();
    SparseMatrix interaction(h.rows(), h.cols());
    std::vector<Triplet> diag;
    for (int i = 1; i <= spec.K; ++i) diag.emplace_back(index_fock(spec.K, stat, {i, i}) - 1, index_fock(spec.K, stat, {i, i}) - 1, U);
    interaction.setFromTriplets(diag.begin(), diag.end());
    SparseMatrix total = h + interaction;
    return {kinetic.space(), std::move(total)};
}

/// Distinguishable-particle form: T^H plus U on every |i,i>. Its Fock image is
/// hubbard_hamiltonian for either statistics.
inline OperatorMatrix hubbard_hamiltonian_hilbert(const LatticeSpec& spec) {
    const OperatorMatrix kinetic = kinetic_hilbert(spec);
    const double U = spec.U.value_or(0.0);
    if (U == 0.0) return kinetic;
    std::vector<Triplet> diag;
    for (int i = 1; i <= spec.K; ++i) diag.emplace_back(index_hilbert(spec.K, {i, i}) - 1, index_hilbert(spec.K, {i, i}) - 1, U);
    SparseMatrix interaction(kinetic.dim(), kinetic.dim());
    interaction.setFromTriplets(diag.begin(), diag.end());
    SparseMatrix total = kinetic.sparse() + interaction;
    return {kinetic.space(), std::move(total)};
}

struct ExchangeTerm {
    ModePair bra;  ///< Hilbert row pair
    ModePair ket;  ///< Hilbert column pair
    double coefficient = 0.0;
};

/// Hilbert dyads of the bosonic Fock term -J |to>_s <from|_s. Off-diagonal
/// pairs expand into two kets (i,j), (j,i) weighted 1/sqrt(2), diagonal
/// pairs into one ket with weight 1.
inline std::vector<ExchangeTerm> exchange_term_expansion(ModePair from, ModePair to, double J) {
    detail::require(from.i <= from.j && to.i <= to.j, "exchange expansion expects ordered bosonic pairs (i <= j)");
    detail::require(from.i >= 1 && to.i >= 1, "mode indices are 1-based");
    // one particle moves by one site, the other stays
    const auto single_hop = [](ModePair a, ModePair b) {
        const auto step = [](int x, int y) { return std::abs(x - y) == 1; };
        return (a.i == b.i && step(a.j, b.j)) || (a.j == b.j && step(a.i, b.i)) || (a.i == b.j && step(a.j, b.i)) ||
               (a.j == b.i && step(a.i, b.j));
    };
    detail::require(single_hop(from, to), "pairs are not connected by a single nearest-neighbour hop");

    const auto images = [](ModePair p) {
        std::vector<std::pair<ModePair, double>> out;
        if (p.i == p.j) {
            out.emplace_back(p, 1.0);
        } else {
            out.emplace_back(p, 1.0 / std::sqrt(2.0));
            out.emplace_back(p.swapped(), 1.0 / std::sqrt(2.0));
        }
        return out;
    };
    std::vector<ExchangeTerm> terms;
    for (const auto& [bra, wb] : images(to))
        for (const auto& [ket, wk] : images(from)) terms.push_back({bra, ket, -J * wb * wk});
    return terms;
}

}  // namespace fockbridge
