#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace dicke3::detail {

/// Connected components of the sparsity graph of a square matrix. Each
/// component lists its indices ascending; components are ordered by their
/// smallest index.
std::vector<std::vector<int>> decoupled_blocks(const Eigen::SparseMatrix<double>& m);

/// Principal submatrix on `indices` (ascending), returned sparse.
Eigen::SparseMatrix<double> extract_block(const Eigen::SparseMatrix<double>& m, const std::vector<int>& indices);

struct LowestPair {
    Eigen::VectorXd values;  ///< up to two lowest eigenvalues, ascending
    Eigen::VectorXd vector;  ///< eigenvector of values[0]
};

/// Lowest eigenpair (plus the second eigenvalue) of a real symmetric matrix.
/// Uses LAPACK band reduction and bisection followed by inverse iteration
/// with a banded LU; small matrices go through a dense solver.
LowestPair lowest_eigenpair(const Eigen::SparseMatrix<double>& m);

}  // namespace dicke3::detail
