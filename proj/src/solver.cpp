#include "dicke3/solver.hpp"

#include "band_eigensolver.hpp"
#include "dicke3/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace dicke3 {

// ---- QuantumState -------------------------------------------------------------

QuantumState::QuantumState(BasisSet basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != basis_.size())
        throw BasisMismatch("state size does not match its basis");
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) throw std::invalid_argument("state is not normalized");
}

QuantumState QuantumState::normalized(BasisSet basis, Eigen::VectorXcd amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
    amplitudes /= n;
    return QuantumState(std::move(basis), std::move(amplitudes));
}

QuantumState QuantumState::basis_state(const BasisSet& basis, const BasisState& s) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    v(static_cast<Eigen::Index>(basis.index_of(s))) = 1.0;
    return QuantumState(basis, std::move(v));
}

QuantumState Spectrum::state(std::size_t k) const {
    return QuantumState(basis, eigenvectors.col(static_cast<Eigen::Index>(k)).cast<std::complex<double>>());
}

// ---- eigen decomposition ------------------------------------------------------

void apply_sign_convention(Eigen::Ref<Eigen::VectorXd> v) {
    if (v.size() == 0) return;
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= peak * (1.0 - 1e-10)) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

namespace {

void check_symmetric(const OperatorMatrix& h) {
    const double scale = std::max(1.0, h.max_abs());
    if (h.asymmetry() > 1e-12 * scale) throw std::invalid_argument("matrix is not symmetric");
}

}  // namespace

Spectrum diagonalize(const OperatorMatrix& h) {
    check_symmetric(h);
    const auto n = static_cast<Eigen::Index>(h.dim());
    const auto blocks = detail::decoupled_blocks(h.sparse());

    struct Level {
        double value;
        std::size_t block;
        Eigen::Index column;
    };
    std::vector<Level> levels;
    levels.reserve(static_cast<std::size_t>(n));
    std::vector<Eigen::MatrixXd> vectors(blocks.size());

    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Eigen::MatrixXd block = Eigen::MatrixXd(detail::extract_block(h.sparse(), blocks[b]));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed");
        for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) levels.push_back({es.eigenvalues()(c), b, c});
        vectors[b] = es.eigenvectors();
    }
    std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.value < b.value; });

    Spectrum sp{h.basis(), Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& lv = levels[static_cast<std::size_t>(k)];
        sp.eigenvalues(k) = lv.value;
        const auto& idx = blocks[lv.block];
        for (std::size_t r = 0; r < idx.size(); ++r) sp.eigenvectors(idx[r], k) = vectors[lv.block](static_cast<Eigen::Index>(r), lv.column);
        apply_sign_convention(sp.eigenvectors.col(k));
    }
    return sp;
}

GroundState ground_state(const OperatorMatrix& h) {
    check_symmetric(h);
    const auto blocks = detail::decoupled_blocks(h.sparse());

    std::vector<double> all_low;
    std::vector<detail::LowestPair> results;
    results.reserve(blocks.size());
    for (const auto& block : blocks) {
        results.push_back(detail::lowest_eigenpair(detail::extract_block(h.sparse(), block)));
        for (Eigen::Index i = 0; i < results.back().values.size(); ++i) all_low.push_back(results.back().values(i));
    }
    // blocks are ordered by smallest index, so ties go to the earliest block
    const double e_min = *std::min_element(all_low.begin(), all_low.end());
    std::size_t best = 0;
    while (results[best].values(0) > e_min + kDegeneracyTol) ++best;

    std::sort(all_low.begin(), all_low.end());
    const double gap = all_low.size() > 1 ? all_low[1] - all_low[0] : std::numeric_limits<double>::infinity();

    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.dim()));
    const auto& idx = blocks[best];
    for (std::size_t r = 0; r < idx.size(); ++r) full(idx[r]) = results[best].vector(static_cast<Eigen::Index>(r));
    full.normalize();
    apply_sign_convention(full);

    return GroundState{QuantumState(h.basis(), full.cast<std::complex<double>>()), results[best].values(0), gap,
                       gap < kDegeneracyTol};
}

// ---- observables --------------------------------------------------------------

double Populations::level(int l) const {
    switch (l) {
        case 1: return a11;
        case 2: return a22;
        case 3: return a33;
        default: throw InvalidConfig("atomic level must be 1, 2 or 3");
    }
}

Populations populations(const QuantumState& s) {
    Populations p;
    const auto& states = s.basis().states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double w = std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
        p.a11 += w * states[i].n1;
        p.a22 += w * states[i].n2;
        p.a33 += w * states[i].n3;
        p.photons += w * states[i].nu;
    }
    return p;
}

double expectation(const QuantumState& s, const OperatorMatrix& x) {
    if (!(s.basis() == x.basis())) throw BasisMismatch("state and operator bases differ");
    const Eigen::VectorXcd xs = x.sparse().cast<std::complex<double>>() * s.amplitudes();
    return s.amplitudes().dot(xs).real();
}

double photon_tail_weight(const QuantumState& s, int blocks) {
    const int first = s.basis().nmax() - blocks + 1;
    double w = 0.0;
    const auto& states = s.basis().states();
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].nu >= first) w += std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
    return w;
}

QuantumState evolve(const Spectrum& sp, const QuantumState& s0, double t) {
    if (!(sp.basis == s0.basis())) throw BasisMismatch("state and spectrum bases differ");
    const Eigen::MatrixXcd v = sp.eigenvectors.cast<std::complex<double>>();
    Eigen::VectorXcd c = v.adjoint() * s0.amplitudes();
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -sp.eigenvalues(k) * t);
    Eigen::VectorXcd out = v * c;
    // absorb rounding drift; the propagator is unitary
    out /= out.norm();
    return QuantumState(sp.basis, std::move(out));
}

int converge_cutoff(const ModelConfig& m, const CutoffOptions& options) {
    if (!(options.etol > 0.0) || !(options.ptol > 0.0)) throw InvalidConfig("cutoff tolerances must be positive");
    if (options.start < 1) throw InvalidConfig("cutoff schedule must start at 1 or more");
    m.validate();

    std::map<int, GroundState> cache;
    auto solve = [&](int nmax) -> const GroundState& {
        auto it = cache.find(nmax);
        if (it != cache.end()) return it->second;
        ModelConfig mc = m;
        mc.nmax = nmax;
        const auto b = enumerate_basis(m.Na, nmax);
        return cache.emplace(nmax, ground_state(build_hamiltonian(mc, b))).first->second;
    };

    for (int nmax = options.start; 2 * nmax <= options.cap; nmax *= 2) {
        const auto& lo = solve(nmax);
        const double tail = photon_tail_weight(lo.state);
        const double e_lo = lo.energy;
        const double e_hi = solve(2 * nmax).energy;
        if (std::abs(e_lo - e_hi) < options.etol && tail < options.ptol) return nmax;
        cache.erase(nmax);
    }
    throw NonConvergence("photon cutoff did not converge below the cap " + std::to_string(options.cap));
}

}  // namespace dicke3
