#pragma once

// Space-tagged matrices and vectors shared by every module.

#include <complex>
#include <string>
#include <utility>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fockbridge/basis.hpp"
#include "fockbridge/error.hpp"

namespace fockbridge {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<Complex>;

/// Square complex matrix on a two-particle space. Storage is either dense or
/// sparse; rows and columns follow the space's global-index order (0-based
/// storage, index m lives at row m-1).
class OperatorMatrix {
public:
    OperatorMatrix(Space space, DenseMatrix entries) : space_(space), storage_(std::move(entries)) { check_shape(); }
    OperatorMatrix(Space space, SparseMatrix entries) : space_(space), storage_(std::move(entries)) {
        std::get<SparseMatrix>(storage_).makeCompressed();
        check_shape();
    }

    static OperatorMatrix zero(Space space) { return {space, SparseMatrix(space.dim(), space.dim())}; }
    static OperatorMatrix identity(Space space) {
        SparseMatrix id(space.dim(), space.dim());
        id.setIdentity();
        return {space, std::move(id)};
    }

    const Space& space() const { return space_; }
    int dim() const { return space_.dim(); }
    bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }

    DenseMatrix dense() const {
        if (is_sparse()) return DenseMatrix(std::get<SparseMatrix>(storage_));
        return std::get<DenseMatrix>(storage_);
    }

    SparseMatrix sparse() const {
        if (is_sparse()) return std::get<SparseMatrix>(storage_);
        return std::get<DenseMatrix>(storage_).sparseView(0.0, 0.0);
    }

    Complex coeff(int row, int col) const {
        if (is_sparse()) return std::get<SparseMatrix>(storage_).coeff(row, col);
        return std::get<DenseMatrix>(storage_)(row, col);
    }

    /// Matrix element <bra|O|ket> addressed by basis pairs.
    Complex element(ModePair bra, ModePair ket) const {
        const auto idx = space_.indexer();
        return coeff(idx.index(bra) - 1, idx.index(ket) - 1);
    }

    long nonzeros() const {
        if (is_sparse()) return std::get<SparseMatrix>(storage_).nonZeros();
        const auto& d = std::get<DenseMatrix>(storage_);
        return static_cast<long>((d.array() != Complex(0.0)).count());
    }

    double nonzero_fraction() const {
        const double total = static_cast<double>(dim()) * dim();
        return total == 0.0 ? 0.0 : static_cast<double>(nonzeros()) / total;
    }

    double hermiticity_error() const {
        const DenseMatrix d = dense();
        return d.size() == 0 ? 0.0 : (d - d.adjoint()).cwiseAbs().maxCoeff();
    }

    Vector apply(const Vector& v) const {
        if (is_sparse()) return std::get<SparseMatrix>(storage_) * v;
        return std::get<DenseMatrix>(storage_) * v;
    }

private:
    void check_shape() const {
        const auto [rows, cols] = std::visit([](const auto& m) { return std::pair<long, long>(m.rows(), m.cols()); },
                                             storage_);
        const long d = space_.dim();
        detail::require(rows == d && cols == d, "operator on " + space_.name() + " space must be " +
                                                    std::to_string(d) + "x" + std::to_string(d) + ", got " +
                                                    std::to_string(rows) + "x" + std::to_string(cols));
    }

    Space space_;
    std::variant<DenseMatrix, SparseMatrix> storage_;
};

/// Amplitude vector on a two-particle space.
class StateVector {
public:
    StateVector(Space space, Vector amplitudes) : space_(space), amplitudes_(std::move(amplitudes)) {
        detail::require(amplitudes_.size() == space_.dim(),
                        "state on " + space_.name() + " space must have length " + std::to_string(space_.dim()) +
                            ", got " + std::to_string(amplitudes_.size()));
    }

    /// Unit vector on the basis element p.
    static StateVector basis(Space space, ModePair p) {
        Vector v = Vector::Zero(space.dim());
        v(space.indexer().index(p) - 1) = 1.0;
        return {space, std::move(v)};
    }

    const Space& space() const { return space_; }
    const Vector& amplitudes() const { return amplitudes_; }
    int dim() const { return space_.dim(); }
    double norm() const { return amplitudes_.norm(); }

    Complex amplitude(ModePair p) const { return amplitudes_(space_.indexer().index(p) - 1); }

private:
    Space space_;
    Vector amplitudes_;
};

}  // namespace fockbridge
