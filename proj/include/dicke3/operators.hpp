#pragma once

#include "dicke3/basis.hpp"
#include "dicke3/types.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace dicke3 {

/// Real matrix over a BasisSet, stored sparse. Exact zeros are dropped on
/// construction. When constructed as hermitian the stored entries must form
/// an exactly symmetric matrix; this is checked.
class OperatorMatrix {
public:
    using Sparse = Eigen::SparseMatrix<double>;

    struct Entry {
        std::size_t row;
        std::size_t col;
        double value;
    };

    OperatorMatrix(BasisSet basis, Sparse matrix, bool hermitian);

    static OperatorMatrix from_triplets(BasisSet basis, const std::vector<Eigen::Triplet<double>>& triplets,
                                        bool hermitian);
    static OperatorMatrix identity(BasisSet basis);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const BasisSet& basis() const noexcept { return basis_; }
    const Sparse& sparse() const noexcept { return matrix_; }
    bool hermitian() const noexcept { return hermitian_; }

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }
    std::vector<Entry> entries() const;
    double operator()(std::size_t row, std::size_t col) const {
        return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    double max_abs() const;
    /// Largest |A_ij - A_ji|.
    double asymmetry() const;

private:
    BasisSet basis_;
    Sparse matrix_;
    bool hermitian_;
};

/// max_ij |A_ij - B_ij|; throws BasisMismatch on different bases.
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);
double max_abs(const OperatorMatrix::Sparse& m);

OperatorMatrix boson_create(const BasisSet& b);
OperatorMatrix boson_annihilate(const BasisSet& b);
/// a^dagger a, diagonal with entries nu.
OperatorMatrix photon_number(const BasisSet& b);
/// a^dagger + a restricted to the truncated space.
OperatorMatrix field_quadrature(const BasisSet& b);

/// Collective generator A_jk = b_j^dagger b_k on the symmetric representation.
OperatorMatrix collective_A(const BasisSet& b, int j, int k);

/// Excitation number M: Xi nu+n2+2n3, V nu+n2+n3, Lambda nu+n3.
int excitation_number(Configuration cfg, const BasisState& s);
OperatorMatrix excitation_number(const BasisSet& b, Configuration cfg);
/// Parity exp(i pi M), diagonal with entries (-1)^M.
OperatorMatrix parity(const BasisSet& b, Configuration cfg);

/// Commutator [A, B] as a sparse matrix.
OperatorMatrix::Sparse commutator(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace dicke3
