#pragma once

// Element-wise conversion of operators and density matrices between the Fock
// and Hilbert representations of two identical particles.
//
// Fock -> Hilbert, for every Hilbert image (i,j;k,l) of a Fock element:
//   bosons:   O^H = 1/2 O^F (1 + eps d_ij)(1 + eps d_kl),  eps = sqrt(2) - 1
//   fermions: O^H = 1/2 O^F sgn(j-i) sgn(l-k),  zero when i=j or k=l
// where the Fock element is read with indices sorted (i<=j, k<=l).
// Hilbert -> Fock is R O R^dagger evaluated on the ordered block j >= i + delta,
// l >= k + delta; it inverts the map above exactly.

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fockbridge/basis.hpp"
#include "fockbridge/operator.hpp"
#include "fockbridge/parallel.hpp"
#include "fockbridge/symmetry.hpp"

namespace fockbridge {

inline constexpr double kSparseFraction = 0.1;
inline constexpr double kExchangeTolerance = 1e-10;
inline constexpr double kDensityTolerance = 1e-10;

/// Positive-semidefinite, unit-trace Hermitian matrix on a two-particle space.
class DensityMatrix {
public:
    DensityMatrix(Space space, DenseMatrix entries) : space_(space), entries_(std::move(entries)) {
        const long d = space_.dim();
        detail::require(entries_.rows() == d && entries_.cols() == d,
                        "density matrix on " + space_.name() + " space must be " + std::to_string(d) + "x" +
                            std::to_string(d));
        const double herm = d == 0 ? 0.0 : (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
        detail::require(herm <= kDensityTolerance,
                        "density matrix is not Hermitian (max deviation " + std::to_string(herm) + ")");
        const double trace = entries_.trace().real();
        detail::require(std::abs(trace - 1.0) <= kDensityTolerance,
                        "density matrix trace must be 1, got " + std::to_string(trace));
        const double lowest = spectrum().minCoeff();
        detail::require(lowest >= -kDensityTolerance,
                        "density matrix has negative eigenvalue " + std::to_string(lowest));
    }

    const Space& space() const { return space_; }
    const DenseMatrix& matrix() const { return entries_; }
    int dim() const { return space_.dim(); }

    Complex element(ModePair bra, ModePair ket) const {
        const auto idx = space_.indexer();
        return entries_(idx.index(bra) - 1, idx.index(ket) - 1);
    }

    /// Ascending eigenvalues.
    Eigen::VectorXd spectrum() const {
        if (entries_.size() == 0) return Eigen::VectorXd();
        const DenseMatrix herm = 0.5 * (entries_ + entries_.adjoint());
        return Eigen::SelfAdjointEigenSolver<DenseMatrix>(herm, Eigen::EigenvaluesOnly).eigenvalues();
    }

private:
    Space space_;
    DenseMatrix entries_;
};

namespace detail {

inline const double kEpsilon = std::sqrt(2.0) - 1.0;

/// Fock -> Hilbert factor for one Hilbert index pair (a,b).
inline double to_hilbert_factor(Statistics stat, ModePair p) {
    if (stat.is_boson()) return p.i == p.j ? 1.0 + kEpsilon : 1.0;
    if (p.i == p.j) return 0.0;
    return p.j > p.i ? 1.0 : -1.0;
}

/// Hilbert images of an ordered Fock pair: (i,j) and, if distinct, (j,i).
inline int hilbert_images(ModePair p, ModePair out[2]) {
    out[0] = p;
    if (p.i == p.j) return 1;
    out[1] = p.swapped();
    return 2;
}

template <typename Emit>
void scatter_fock_element(int K, Statistics stat, ModePair bra, ModePair ket, Complex value, Emit&& emit) {
    ModePair rows[2];
    ModePair cols[2];
    const int nr = hilbert_images(bra, rows);
    const int nc = hilbert_images(ket, cols);
    for (int a = 0; a < nr; ++a) {
        for (int c = 0; c < nc; ++c) {
            const double factor = 0.5 * to_hilbert_factor(stat, rows[a]) * to_hilbert_factor(stat, cols[c]);
            emit(index_hilbert(K, rows[a]) - 1, index_hilbert(K, cols[c]) - 1, factor * value);
        }
    }
}

/// Row of the rectangular symmetrizer for an ordered pair: Hilbert columns and weights.
inline int symmetrizer_row(int K, Statistics stat, ModePair p, int cols[2], double weights[2]) {
    cols[0] = index_hilbert(K, p) - 1;
    if (p.i == p.j) {
        weights[0] = 1.0;
        return 1;
    }
    cols[1] = index_hilbert(K, p.swapped()) - 1;
    weights[0] = M_SQRT1_2;
    weights[1] = stat.g() * M_SQRT1_2;
    return 2;
}

/// R O R^dagger over the ordered block. On sector-supported input this reduces
/// to 2 O / ((1 + eps d_ij)(1 + eps d_kl)).
inline OperatorMatrix gather_to_fock(const OperatorMatrix& op, Statistics stat) {
    const int K = op.space().K;
    const Space fock = Space::fock(K, stat);
    const int dim = fock.dim();
    const std::vector<ModePair> pairs = enumerate_basis(K, stat);

    if (op.is_sparse() || op.nonzero_fraction() < kSparseFraction) {
        const SparseMatrix s = op.sparse();
        std::vector<Triplet> entries;
        entries.reserve(s.nonZeros());
        for (int m = 0; m < dim; ++m) {
            int rows[2];
            double wr[2];
            const int nr = symmetrizer_row(K, stat, pairs[m], rows, wr);
            for (int a = 0; a < nr; ++a)
                for (SparseMatrix::InnerIterator it(s, rows[a]); it; ++it) {
                    const ModePair ket = unindex_hilbert(K, static_cast<int>(it.col()) + 1);
                    if (ket.j < ket.i + stat.delta()) {
                        if (ket.i == ket.j) continue;
                        // lower-triangle column: weight g/sqrt2 onto the ordered pair
                        entries.emplace_back(m, index_fock(K, stat, ket.swapped()) - 1,
                                             wr[a] * stat.g() * M_SQRT1_2 * it.value());
                        continue;
                    }
                    const double wc = ket.i == ket.j ? 1.0 : M_SQRT1_2;
                    entries.emplace_back(m, index_fock(K, stat, ket) - 1, wr[a] * wc * it.value());
                }
        }
        SparseMatrix out(dim, dim);
        out.setFromTriplets(entries.begin(), entries.end());
        out.prune(Complex(0.0));
        return {fock, std::move(out)};
    }

    const DenseMatrix d = op.dense();
    DenseMatrix out(dim, dim);
    parallel_for(dim, [&](int begin, int end) {
        for (int m = begin; m < end; ++m) {
            int rows[2];
            double wr[2];
            const int nr = symmetrizer_row(K, stat, pairs[m], rows, wr);
            for (int n = 0; n < dim; ++n) {
                int cols[2];
                double wc[2];
                const int nc = symmetrizer_row(K, stat, pairs[n], cols, wc);
                Complex sum(0.0);
                for (int a = 0; a < nr; ++a)
                    for (int c = 0; c < nc; ++c) sum += wr[a] * wc[c] * d(rows[a], cols[c]);
                out(m, n) = sum;
            }
        }
    });
    return {fock, std::move(out)};
}

}  // namespace detail

/// Representation of a Fock-space operator on the distinguishable-particle
/// basis, equal to R^dagger O^F R with R = rect_symmetrizer.
inline OperatorMatrix fock_to_hilbert_op(const OperatorMatrix& fock_op) {
    const auto stat = fock_op.space().statistics();
    detail::require(stat.has_value(), "fock_to_hilbert_op expects an operator on a Fock space");
    const int K = fock_op.space().K;
    const Space hilbert = Space::hilbert(K);
    const int dim = fock_op.dim();

    if (fock_op.is_sparse() || fock_op.nonzero_fraction() < kSparseFraction) {
        const SparseMatrix s = fock_op.sparse();
        std::vector<Triplet> entries;
        entries.reserve(4 * s.nonZeros());
        for (int r = 0; r < s.outerSize(); ++r) {
            const ModePair bra = unindex_fock(K, *stat, r + 1);
            for (SparseMatrix::InnerIterator it(s, r); it; ++it) {
                const ModePair ket = unindex_fock(K, *stat, static_cast<int>(it.col()) + 1);
                detail::scatter_fock_element(K, *stat, bra, ket, it.value(),
                                             [&](int row, int col, Complex v) { entries.emplace_back(row, col, v); });
            }
        }
        SparseMatrix out(hilbert.dim(), hilbert.dim());
        out.setFromTriplets(entries.begin(), entries.end());
        return {hilbert, std::move(out)};
    }

    // Each Fock row writes only the Hilbert rows of its own images.
    const DenseMatrix d = fock_op.dense();
    DenseMatrix out = DenseMatrix::Zero(hilbert.dim(), hilbert.dim());
    parallel_for(dim, [&](int begin, int end) {
        for (int m = begin; m < end; ++m) {
            const ModePair bra = unindex_fock(K, *stat, m + 1);
            for (int n = 0; n < dim; ++n) {
                const ModePair ket = unindex_fock(K, *stat, n + 1);
                detail::scatter_fock_element(K, *stat, bra, ket, d(m, n),
                                             [&](int row, int col, Complex v) { out(row, col) = v; });
            }
        }
    });
    return {hilbert, std::move(out)};
}

/// Fock representation R O^H R^dagger of an exchange-symmetric Hilbert operator.
inline OperatorMatrix hilbert_to_fock_op(const OperatorMatrix& hilbert_op, Statistics stat) {
    detail::require(hilbert_op.space().is_hilbert(), "hilbert_to_fock_op expects an operator on the Hilbert space");
    require_exchange_symmetric(hilbert_op, kExchangeTolerance, "Hilbert operator");
    return detail::gather_to_fock(hilbert_op, stat);
}

/// Largest violation of rho_{ij;kl} = g rho_{ji;kl} = g rho_{ij;lk}.
inline double sector_violation(const DensityMatrix& rho, Statistics stat) {
    const int K = rho.space().K;
    const DenseMatrix& m = rho.matrix();
    const double g = stat.g();
    double worst = 0.0;
    for (int r = 0; r < m.rows(); ++r) {
        const int rs = index_hilbert(K, unindex_hilbert(K, r + 1).swapped()) - 1;
        for (int c = 0; c < m.cols(); ++c) {
            const int cs = index_hilbert(K, unindex_hilbert(K, c + 1).swapped()) - 1;
            worst = std::max({worst, std::abs(m(r, c) - g * m(rs, c)), std::abs(m(r, c) - g * m(r, cs))});
        }
    }
    return worst;
}

/// rho^F = 2 rho^H / ((1 + eps d_ij)(1 + eps d_kl)) for bosons, 2 rho^H for
/// fermions, on the ordered block.
inline DensityMatrix hilbert_to_fock_density(const DensityMatrix& rho, Statistics stat) {
    detail::require(rho.space().is_hilbert(), "hilbert_to_fock_density expects a Hilbert-space density matrix");
    const double violation = sector_violation(rho, stat);
    if (violation > kExchangeTolerance) {
        std::ostringstream msg;
        msg << "density matrix is not supported on the " << stat.name() << " sector (exchange violation "
            << violation << ")";
        throw DomainError(msg.str());
    }
    const OperatorMatrix fock = detail::gather_to_fock(OperatorMatrix(rho.space(), rho.matrix()), stat);
    return {fock.space(), fock.dense()};
}

/// Embeds a Fock density matrix into the Hilbert space (R^dagger rho R).
inline DensityMatrix fock_to_hilbert_density(const DensityMatrix& rho) {
    const OperatorMatrix hilbert = fock_to_hilbert_op(OperatorMatrix(rho.space(), rho.matrix()));
    return {hilbert.space(), hilbert.dense()};
}

}  // namespace fockbridge
