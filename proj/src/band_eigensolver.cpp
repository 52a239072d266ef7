#include "band_eigensolver.hpp"

#include "dicke3/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dicke3::detail {

namespace {

constexpr Eigen::Index kDenseThreshold = 160;

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

std::vector<std::vector<int>> decoupled_blocks(const Eigen::SparseMatrix<double>& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
            const int a = find_root(parent, static_cast<int>(it.row()));
            const int b = find_root(parent, static_cast<int>(it.col()));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<int> slot(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) {
        const int r = find_root(parent, i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(i);
    }
    return blocks;
}

Eigen::SparseMatrix<double> extract_block(const Eigen::SparseMatrix<double>& m, const std::vector<int>& indices) {
    const auto n = static_cast<Eigen::Index>(indices.size());
    if (n == m.rows()) return m;
    std::vector<int> local(static_cast<std::size_t>(m.rows()), -1);
    for (std::size_t i = 0; i < indices.size(); ++i) local[indices[i]] = static_cast<int>(i);

    std::vector<Eigen::Triplet<double>> t;
    for (int col : indices)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it)
            if (local[it.row()] >= 0) t.emplace_back(local[it.row()], local[col], it.value());
    Eigen::SparseMatrix<double> out(n, n);
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

namespace {

LowestPair dense_lowest(const Eigen::SparseMatrix<double>& m) {
    const Eigen::MatrixXd dense(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed");
    LowestPair out;
    out.values = es.eigenvalues().head(std::min<Eigen::Index>(2, m.rows()));
    out.vector = es.eigenvectors().col(0);
    return out;
}

int bandwidth(const Eigen::SparseMatrix<double>& m) {
    int kd = 0;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it)
            kd = std::max(kd, static_cast<int>(std::abs(it.row() - it.col())));
    return kd;
}

}  // namespace

LowestPair lowest_eigenpair(const Eigen::SparseMatrix<double>& m) {
    const auto n = static_cast<lapack_int>(m.rows());
    if (m.rows() <= kDenseThreshold) return dense_lowest(m);
    const lapack_int kd = bandwidth(m);
    if (kd * 4 > n) return dense_lowest(m);

    // Eigenvalues: symmetric band storage (upper), reduction + bisection.
    const lapack_int ldab = kd + 1;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    for (Eigen::Index c = 0; c < m.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it)
            if (it.row() <= it.col()) ab[static_cast<std::size_t>(kd + it.row() - it.col() + it.col() * ldab)] = it.value();

    const lapack_int want = std::min<lapack_int>(2, n);
    std::vector<double> w(static_cast<std::size_t>(n)), q(1), z(1);
    std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
    lapack_int found = 0;
    lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, ab.data(), ldab, q.data(), 1, 0.0, 0.0, 1,
                                     want, 2 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), 1, ifail.data());
    if (info != 0 || found != want) throw NonConvergence("band eigensolver failed (info " + std::to_string(info) + ")");

    LowestPair out;
    out.values = Eigen::Map<Eigen::VectorXd>(w.data(), want);

    // Eigenvector: inverse iteration with a shift just below E0, banded LU.
    const double e0 = out.values(0);
    const double scale = 1.0 + std::abs(e0);
    const lapack_int kl = kd, ku = kd, ldgb = 2 * kl + ku + 1;
    std::vector<double> gb;
    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    for (double shift_rel : {1e-11, 1e-9, 1e-7}) {
        const double sigma = e0 - shift_rel * scale;
        gb.assign(static_cast<std::size_t>(ldgb) * n, 0.0);
        for (Eigen::Index c = 0; c < m.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it)
                gb[static_cast<std::size_t>(kl + ku + it.row() - it.col() + it.col() * ldgb)] = it.value();
        for (lapack_int i = 0; i < n; ++i) gb[static_cast<std::size_t>(kl + ku + i * ldgb)] -= sigma;

        info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, gb.data(), ldgb, ipiv.data());
        if (info != 0) continue;

        Eigen::VectorXd x(n);
        for (lapack_int i = 0; i < n; ++i) x(i) = 1.0 + 0.25 * std::sin(0.7 * (i + 1));
        x.normalize();
        bool ok = true;
        for (int iter = 0; iter < 12; ++iter) {
            Eigen::VectorXd y = x;
            info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, gb.data(), ldgb, ipiv.data(), y.data(), n);
            if (info != 0 || !y.allFinite()) {
                ok = false;
                break;
            }
            y.normalize();
            if (y.dot(x) < 0) y = -y;
            const double change = (y - x).norm();
            x = std::move(y);
            if (change < 1e-14) break;
        }
        if (!ok) continue;
        out.vector = std::move(x);
        return out;
    }
    throw NonConvergence("inverse iteration failed for the lowest eigenvector");
}

}  // namespace dicke3::detail
