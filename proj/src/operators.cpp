#include "dicke3/operators.hpp"

#include "dicke3/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace dicke3 {

// ---- enum helpers -----------------------------------------------------------

std::string to_string(Configuration cfg) {
    switch (cfg) {
        case Configuration::Xi: return "xi";
        case Configuration::Lambda: return "lambda";
        case Configuration::V: return "v";
    }
    return "?";
}

std::string to_string(Branch branch) { return branch == Branch::First ? "1" : "2"; }

std::string to_string(Coupling c) {
    switch (c) {
        case Coupling::Mu12: return "mu12";
        case Coupling::Mu13: return "mu13";
        case Coupling::Mu23: return "mu23";
    }
    return "?";
}

namespace {
std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}
}  // namespace

Configuration parse_configuration(std::string_view text) {
    const auto t = lower(text);
    if (t == "xi" || t == "ladder" || t == "cascade") return Configuration::Xi;
    if (t == "lambda") return Configuration::Lambda;
    if (t == "v") return Configuration::V;
    throw InvalidConfig("unknown configuration '" + std::string(text) + "' (expected xi, lambda or v)");
}

Branch parse_branch(std::string_view text) {
    const auto t = lower(text);
    if (t == "1" || t == "first") return Branch::First;
    if (t == "2" || t == "second") return Branch::Second;
    throw InvalidConfig("unknown branch '" + std::string(text) + "' (expected 1 or 2)");
}

LevelPair levels_of(Coupling c) {
    switch (c) {
        case Coupling::Mu12: return {1, 2};
        case Coupling::Mu13: return {1, 3};
        case Coupling::Mu23: return {2, 3};
    }
    return {0, 0};
}

Coupling coupling_of(int j, int k) {
    if (j > k) std::swap(j, k);
    if (j == 1 && k == 2) return Coupling::Mu12;
    if (j == 1 && k == 3) return Coupling::Mu13;
    if (j == 2 && k == 3) return Coupling::Mu23;
    throw InvalidConfig("no coupling for levels " + std::to_string(j) + "," + std::to_string(k));
}

// ---- OperatorMatrix ---------------------------------------------------------

OperatorMatrix::OperatorMatrix(BasisSet basis, Sparse matrix, bool hermitian)
    : basis_(std::move(basis)), matrix_(std::move(matrix)), hermitian_(hermitian) {
    if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != basis_.size())
        throw BasisMismatch("operator dimension does not match its basis");
    matrix_.prune(0.0, 0.0);
    matrix_.makeCompressed();
    if (hermitian_ && asymmetry() != 0.0) throw std::logic_error("operator flagged hermitian is not symmetric");
}

OperatorMatrix OperatorMatrix::from_triplets(BasisSet basis, const std::vector<Eigen::Triplet<double>>& triplets,
                                             bool hermitian) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Sparse m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return OperatorMatrix(std::move(basis), std::move(m), hermitian);
}

OperatorMatrix OperatorMatrix::identity(BasisSet basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Sparse m(n, n);
    m.setIdentity();
    return OperatorMatrix(std::move(basis), std::move(m), true);
}

std::vector<OperatorMatrix::Entry> OperatorMatrix::entries() const {
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(matrix_.nonZeros()));
    for (Eigen::Index c = 0; c < matrix_.outerSize(); ++c)
        for (Sparse::InnerIterator it(matrix_, c); it; ++it)
            out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    return out;
}

double max_abs(const OperatorMatrix::Sparse& m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.nonZeros(); ++i) best = std::max(best, std::abs(m.valuePtr()[i]));
    return best;
}

double OperatorMatrix::max_abs() const { return dicke3::max_abs(matrix_); }

double OperatorMatrix::asymmetry() const {
    const Sparse t = matrix_.transpose();
    return dicke3::max_abs(Sparse(matrix_ - t));
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.basis() == b.basis())) throw BasisMismatch("operators live on different bases");
    return max_abs(OperatorMatrix::Sparse(a.sparse() - b.sparse()));
}

OperatorMatrix::Sparse commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.basis() == b.basis())) throw BasisMismatch("operators live on different bases");
    OperatorMatrix::Sparse ab = a.sparse() * b.sparse();
    OperatorMatrix::Sparse ba = b.sparse() * a.sparse();
    return ab - ba;
}

// ---- field and matter operators --------------------------------------------

namespace {

void check_level(int level) {
    if (level < 1 || level > 3) throw InvalidConfig("atomic level must be 1, 2 or 3");
}

template <typename Fn>
OperatorMatrix diagonal(const BasisSet& b, Fn&& value) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double v = value(b[i]);
        t.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
    }
    return OperatorMatrix::from_triplets(b, t, true);
}

}  // namespace

OperatorMatrix boson_create(const BasisSet& b) {
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < b.size(); ++i) {
        BasisState s = b[i];
        if (s.nu == b.nmax()) continue;  // truncated
        const double amp = std::sqrt(static_cast<double>(s.nu + 1));
        ++s.nu;
        t.emplace_back(static_cast<int>(b.index_of(s)), static_cast<int>(i), amp);
    }
    return OperatorMatrix::from_triplets(b, t, false);
}

OperatorMatrix boson_annihilate(const BasisSet& b) {
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < b.size(); ++i) {
        BasisState s = b[i];
        if (s.nu == 0) continue;
        const double amp = std::sqrt(static_cast<double>(s.nu));
        --s.nu;
        t.emplace_back(static_cast<int>(b.index_of(s)), static_cast<int>(i), amp);
    }
    return OperatorMatrix::from_triplets(b, t, false);
}

OperatorMatrix photon_number(const BasisSet& b) {
    return diagonal(b, [](const BasisState& s) { return static_cast<double>(s.nu); });
}

OperatorMatrix field_quadrature(const BasisSet& b) {
    const auto up = boson_create(b);
    const auto down = boson_annihilate(b);
    return OperatorMatrix(b, up.sparse() + down.sparse(), true);
}

OperatorMatrix collective_A(const BasisSet& b, int j, int k) {
    check_level(j);
    check_level(k);
    if (j == k) return diagonal(b, [j](const BasisState& s) { return static_cast<double>(s.n(j)); });

    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const BasisState& s = b[i];
        const int nk = s.n(k);
        if (nk == 0) continue;
        int occ[4] = {0, s.n1, s.n2, s.n3};
        const double amp = std::sqrt(static_cast<double>(occ[j] + 1) * nk);
        ++occ[j];
        --occ[k];
        const BasisState target{s.nu, occ[1], occ[2], occ[3]};
        if (!b.contains(target)) continue;  // leaves a frozen-level sub-basis
        t.emplace_back(static_cast<int>(b.index_of(target)), static_cast<int>(i), amp);
    }
    return OperatorMatrix::from_triplets(b, t, false);
}

int excitation_number(Configuration cfg, const BasisState& s) {
    switch (cfg) {
        case Configuration::Xi: return s.nu + s.n2 + 2 * s.n3;
        case Configuration::V: return s.nu + s.n2 + s.n3;
        case Configuration::Lambda: return s.nu + s.n3;
    }
    return 0;
}

OperatorMatrix excitation_number(const BasisSet& b, Configuration cfg) {
    return diagonal(b, [cfg](const BasisState& s) { return static_cast<double>(excitation_number(cfg, s)); });
}

OperatorMatrix parity(const BasisSet& b, Configuration cfg) {
    return diagonal(b, [cfg](const BasisState& s) { return excitation_number(cfg, s) % 2 == 0 ? 1.0 : -1.0; });
}

}  // namespace dicke3
