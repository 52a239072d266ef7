#include "dicke3/rotations.hpp"

#include "dicke3/error.hpp"

#include <cmath>
#include <limits>

namespace dicke3 {

LevelPair rotation_pair(Configuration cfg) {
    switch (cfg) {
        case Configuration::Xi: return {3, 1};
        case Configuration::Lambda: return {1, 2};
        case Configuration::V: return {3, 2};
    }
    return {0, 0};
}

double decoupling_angle(const ModelConfig& m, Branch branch) {
    // (numerator, denominator) of tan(alpha) for the first branch
    double num = 0.0, den = 0.0;
    switch (m.cfg) {
        case Configuration::Xi: num = m.mu23, den = m.mu12; break;
        case Configuration::Lambda: num = m.mu13, den = m.mu23; break;
        case Configuration::V: num = m.mu13, den = m.mu12; break;
    }
    if (num == 0.0 && den == 0.0)
        throw UndefinedAngle("decoupling angle undefined: both couplings of the " + to_string(m.cfg) +
                             " configuration vanish");
    if (branch == Branch::First) return std::atan2(num, den);
    return -std::atan2(den, num);
}

RotationSpec decoupling_rotation(const ModelConfig& m, Branch branch) {
    const auto pair = rotation_pair(m.cfg);
    return {pair.j, pair.k, decoupling_angle(m, branch)};
}

namespace {

void check_pair(int j, int k) {
    if (j < 1 || j > 3 || k < 1 || k > 3) throw InvalidConfig("atomic level must be 1, 2 or 3");
    if (j == k) throw InvalidConfig("rotation generator needs two distinct levels");
}

}  // namespace

OperatorMatrix generator_K(const BasisSet& b, int j, int k) {
    check_pair(j, k);
    const auto up = collective_A(b, j, k);
    const auto down = collective_A(b, k, j);
    return OperatorMatrix(b, up.sparse() - down.sparse(), false);
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);

    const auto n = a.rows();
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int order = 1; order <= 30; ++order) {
        term = term * scaled / static_cast<double>(order);
        result += term;
        if (term.cwiseAbs().maxCoeff() <= std::numeric_limits<double>::epsilon() * 1e-3) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Eigen::MatrixXd atomic_rotation(const RotationSpec& spec, int Na) {
    check_pair(spec.j, spec.k);
    const auto atoms = enumerate_basis(Na, 0);
    const Eigen::MatrixXd k = generator_K(atoms, spec.j, spec.k).dense();
    return expm(-spec.alpha * k);
}

OperatorMatrix rotation_matrix(const RotationSpec& spec, const BasisSet& b) {
    if (!b.is_full()) throw BasisMismatch("rotations act on a full basis");
    const Eigen::MatrixXd u = atomic_rotation(spec, b.Na());
    const auto block = static_cast<int>(b.atomic_dim());

    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(block) * block * static_cast<std::size_t>(b.nmax() + 1));
    for (int nu = 0; nu <= b.nmax(); ++nu) {
        const int offset = nu * block;
        for (int r = 0; r < block; ++r)
            for (int c = 0; c < block; ++c)
                if (u(r, c) != 0.0) t.emplace_back(offset + r, offset + c, u(r, c));
    }
    return OperatorMatrix::from_triplets(b, t, false);
}

OperatorMatrix transform_generator_closed_form(const RotationSpec& spec, int l, int m, const BasisSet& b) {
    check_pair(spec.j, spec.k);
    if (l < 1 || l > 3 || m < 1 || m > 3) throw InvalidConfig("generator indices must be 1, 2 or 3");
    const int j = spec.j, k = spec.k;
    const double c = std::cos(spec.alpha), s = std::sin(spec.alpha);

    // Linear combination of generators: sum coeff * A_(row, col)
    struct Term {
        double coeff;
        int row;
        int col;
    };
    std::vector<Term> terms;
    if (l == j && m == j) {
        terms = {{c * c, j, j}, {s * s, k, k}, {c * s, j, k}, {c * s, k, j}};
    } else if (l == k && m == k) {
        terms = {{c * c, k, k}, {s * s, j, j}, {-c * s, j, k}, {-c * s, k, j}};
    } else if (l == j && m == k) {
        terms = {{c * c, j, k}, {-s * s, k, j}, {c * s, k, k}, {-c * s, j, j}};
    } else if (l == k && m == j) {
        terms = {{c * c, k, j}, {-s * s, j, k}, {c * s, k, k}, {-c * s, j, j}};
    } else if (l == j) {
        terms = {{c, j, m}, {s, k, m}};
    } else if (l == k) {
        terms = {{c, k, m}, {-s, j, m}};
    } else if (m == j) {
        terms = {{c, l, j}, {s, l, k}};
    } else if (m == k) {
        terms = {{c, l, k}, {-s, l, j}};
    } else {
        terms = {{1.0, l, m}};
    }

    const auto n = static_cast<Eigen::Index>(b.size());
    OperatorMatrix::Sparse sum(n, n);
    for (const auto& term : terms) sum += term.coeff * collective_A(b, term.row, term.col).sparse();
    return OperatorMatrix(b, std::move(sum), false);
}

OperatorMatrix transform_exact(const RotationSpec& spec, const OperatorMatrix& x, const BasisSet& b) {
    if (!(x.basis() == b)) throw BasisMismatch("operator and rotation bases differ");
    const auto u = rotation_matrix(spec, b);
    OperatorMatrix::Sparse ut = u.sparse().transpose();
    OperatorMatrix::Sparse result = u.sparse() * x.sparse() * ut;
    return OperatorMatrix(b, std::move(result), false);
}

Eigen::VectorXcd rotate_amplitudes(const RotationSpec& spec, const BasisSet& b, const Eigen::VectorXcd& amplitudes) {
    if (!b.is_full()) throw BasisMismatch("rotations act on a full basis");
    if (static_cast<std::size_t>(amplitudes.size()) != b.size()) throw BasisMismatch("state size does not match basis");
    const Eigen::MatrixXcd u = atomic_rotation(spec, b.Na()).cast<std::complex<double>>();
    const auto block = static_cast<Eigen::Index>(b.atomic_dim());
    Eigen::VectorXcd out(amplitudes.size());
    for (int nu = 0; nu <= b.nmax(); ++nu) out.segment(nu * block, block) = u * amplitudes.segment(nu * block, block);
    return out;
}

}  // namespace dicke3
