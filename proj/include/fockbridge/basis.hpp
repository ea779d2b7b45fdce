#pragma once

// Two-particle basis enumeration and global indexing.
//
// Three bases are supported for K modes:
//   Hilbert      |i,j>    all pairs,          dim K^2
//   boson Fock   |i,j>_s  i <= j,             dim K(K+1)/2
//   fermion Fock |i,j>_a  i <  j,             dim K(K-1)/2
// Each is ordered row-major on (i, j). Mode labels and global indices are
// 1-based in the public API.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fockbridge/error.hpp"

namespace fockbridge {

inline constexpr int kMaxModes = 1 << 15;

enum class Particle { Boson, Fermion };

/// Exchange statistics. g = +1 for bosons, -1 for fermions; delta = (1 - g)/2.
class Statistics {
public:
    constexpr explicit Statistics(Particle kind) : kind_(kind) {}

    static constexpr Statistics boson() { return Statistics(Particle::Boson); }
    static constexpr Statistics fermion() { return Statistics(Particle::Fermion); }

    constexpr Particle kind() const { return kind_; }
    constexpr bool is_boson() const { return kind_ == Particle::Boson; }
    constexpr bool is_fermion() const { return kind_ == Particle::Fermion; }
    constexpr int g() const { return is_boson() ? 1 : -1; }
    constexpr int delta() const { return (1 - g()) / 2; }

    constexpr bool operator==(const Statistics&) const = default;

    std::string name() const { return is_boson() ? "boson" : "fermion"; }

private:
    Particle kind_;
};

inline std::ostream& operator<<(std::ostream& os, Statistics s) { return os << s.name(); }

struct ModePair {
    int i = 1;
    int j = 1;

    constexpr bool operator==(const ModePair&) const = default;
    constexpr ModePair swapped() const { return {j, i}; }
};

inline std::ostream& operator<<(std::ostream& os, ModePair p) {
    return os << '(' << p.i << ',' << p.j << ')';
}

inline void validate_modes(int K) {
    detail::require(K >= 1, "number of modes K must be positive, got " + std::to_string(K));
    detail::require(K <= kMaxModes, "number of modes K=" + std::to_string(K) + " exceeds the supported maximum " +
                                        std::to_string(kMaxModes));
}

constexpr int hilbert_dim(int K) { return K * K; }
constexpr int fock_dim(int K, Statistics stat) { return K * (K + stat.g()) / 2; }

/// m = K(i-1) + j.
inline int index_hilbert(int K, ModePair p) {
    validate_modes(K);
    detail::require(p.i >= 1 && p.i <= K && p.j >= 1 && p.j <= K,
                    "mode index out of range 1.." + std::to_string(K));
    return K * (p.i - 1) + p.j;
}

/// m = K(i-1) + j - s(g,i), with s(g,i) = i(i-g)/2 the number of skipped
/// (exchanged or Pauli-forbidden) pairs up to row i.
inline int index_fock(int K, Statistics stat, ModePair p) {
    validate_modes(K);
    detail::require(p.i >= 1 && p.i <= K && p.j >= 1 && p.j <= K,
                    "mode index out of range 1.." + std::to_string(K));
    detail::require(p.j >= p.i + stat.delta(),
                    stat.is_boson() ? "boson Fock pair requires i <= j" : "fermion Fock pair requires i < j");
    const int correction = p.i * (p.i - stat.g()) / 2;
    return K * (p.i - 1) + p.j - correction;
}

inline ModePair unindex_hilbert(int K, int m) {
    validate_modes(K);
    detail::require(m >= 1 && m <= hilbert_dim(K),
                    "Hilbert index " + std::to_string(m) + " out of range 1.." + std::to_string(hilbert_dim(K)));
    return {1 + (m - 1) / K, 1 + (m - 1) % K};
}

/// Inverse of index_fock. f(r) = m - 1 - r(2K + g - r)/2 counts how far m
/// lies past the first r rows; the row is 1 + the largest r with f(r) >= 0.
/// The scan over r is exact integer arithmetic (r(2K+g-r) is always even).
inline ModePair unindex_fock(int K, Statistics stat, int m) {
    validate_modes(K);
    const int dim = fock_dim(K, stat);
    detail::require(m >= 1 && m <= dim,
                    stat.name() + " Fock index " + std::to_string(m) + " out of range 1.." + std::to_string(dim));
    const auto offset = [&](int r) { return m - 1 - r * (2 * K + stat.g() - r) / 2; };
    int row = 0;
    for (int r = 1; r < K && offset(r) >= 0; ++r) row = r;
    const int i = 1 + row;
    return {i, stat.delta() + i + offset(row)};
}

/// Pairs in global-index order; position p holds the pair with index p+1.
inline std::vector<ModePair> enumerate_basis(int K, std::optional<Statistics> stat = std::nullopt) {
    validate_modes(K);
    std::vector<ModePair> pairs;
    const int shift = stat ? stat->delta() : 0;
    pairs.reserve(stat ? fock_dim(K, *stat) : hilbert_dim(K));
    for (int i = 1; i <= K; ++i) {
        const int first = stat ? i + shift : 1;
        for (int j = first; j <= K; ++j) pairs.push_back({i, j});
    }
    return pairs;
}

/// Bundles K with an optional statistics; no statistics means the
/// distinguishable-particle (Hilbert) basis.
class BasisIndexer {
public:
    explicit BasisIndexer(int K, std::optional<Statistics> stat = std::nullopt) : K_(K), stat_(stat) {
        validate_modes(K);
    }

    int modes() const { return K_; }
    std::optional<Statistics> statistics() const { return stat_; }
    bool is_hilbert() const { return !stat_.has_value(); }

    int dim() const { return stat_ ? fock_dim(K_, *stat_) : hilbert_dim(K_); }
    int index(ModePair p) const { return stat_ ? index_fock(K_, *stat_, p) : index_hilbert(K_, p); }
    ModePair pair(int m) const { return stat_ ? unindex_fock(K_, *stat_, m) : unindex_hilbert(K_, m); }
    std::vector<ModePair> enumerate() const { return enumerate_basis(K_, stat_); }

    /// True when p is a member of this basis (ordering constraint included).
    bool contains(ModePair p) const {
        if (p.i < 1 || p.i > K_ || p.j < 1 || p.j > K_) return false;
        return !stat_ || p.j >= p.i + stat_->delta();
    }

private:
    int K_;
    std::optional<Statistics> stat_;
};

enum class SpaceKind { Hilbert, BosonFock, FermionFock };

/// A two-particle space together with its mode count.
struct Space {
    SpaceKind kind = SpaceKind::Hilbert;
    int K = 1;

    static Space hilbert(int K) { return {SpaceKind::Hilbert, K}; }
    static Space fock(int K, Statistics stat) {
        return {stat.is_boson() ? SpaceKind::BosonFock : SpaceKind::FermionFock, K};
    }

    bool is_hilbert() const { return kind == SpaceKind::Hilbert; }
    bool is_fock() const { return !is_hilbert(); }

    std::optional<Statistics> statistics() const {
        switch (kind) {
            case SpaceKind::BosonFock: return Statistics::boson();
            case SpaceKind::FermionFock: return Statistics::fermion();
            default: return std::nullopt;
        }
    }

    int dim() const { return is_hilbert() ? hilbert_dim(K) : fock_dim(K, *statistics()); }
    BasisIndexer indexer() const { return BasisIndexer(K, statistics()); }

    std::string name() const {
        switch (kind) {
            case SpaceKind::BosonFock: return "boson_fock";
            case SpaceKind::FermionFock: return "fermion_fock";
            default: return "hilbert";
        }
    }

    bool operator==(const Space&) const = default;
};

}  // namespace fockbridge
