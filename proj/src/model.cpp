#include "dicke3/model.hpp"

#include "dicke3/error.hpp"
#include "dicke3/rotations.hpp"

#include <cmath>
#include <string>

namespace dicke3 {

double ModelConfig::omega(int level) const {
    switch (level) {
        case 1: return omega1;
        case 2: return omega2;
        case 3: return omega3;
        default: throw InvalidConfig("atomic level must be 1, 2 or 3");
    }
}

double ModelConfig::mu(Coupling c) const {
    switch (c) {
        case Coupling::Mu12: return mu12;
        case Coupling::Mu13: return mu13;
        case Coupling::Mu23: return mu23;
    }
    return 0.0;
}

void ModelConfig::set_mu(Coupling c, double value) {
    switch (c) {
        case Coupling::Mu12: mu12 = value; break;
        case Coupling::Mu13: mu13 = value; break;
        case Coupling::Mu23: mu23 = value; break;
    }
}

Coupling forbidden_coupling(Configuration cfg) {
    switch (cfg) {
        case Configuration::Xi: return Coupling::Mu13;
        case Configuration::Lambda: return Coupling::Mu12;
        case Configuration::V: return Coupling::Mu23;
    }
    return Coupling::Mu13;
}

void ModelConfig::validate() const {
    if (!(Omega > 0.0) || !std::isfinite(Omega)) throw InvalidConfig("field frequency Omega must be positive");
    if (!std::isfinite(omega1) || !std::isfinite(omega2) || !std::isfinite(omega3))
        throw InvalidConfig("level frequencies must be finite");
    if (omega1 > omega2 || omega2 > omega3) throw InvalidConfig("level frequencies must satisfy omega1 <= omega2 <= omega3");
    for (auto c : {Coupling::Mu12, Coupling::Mu13, Coupling::Mu23}) {
        const double v = mu(c);
        if (!std::isfinite(v) || v < 0.0) throw InvalidConfig("coupling " + to_string(c) + " must be non-negative");
    }
    const auto forbidden = forbidden_coupling(cfg);
    if (mu(forbidden) != 0.0)
        throw InvalidConfig("coupling " + to_string(forbidden) + " is forbidden in the " + to_string(cfg) +
                            " configuration");
    if (Na < 1) throw InvalidConfig("atom count Na must be at least 1");
    if (nmax < 0) throw InvalidConfig("photon cutoff nmax must be non-negative");
}

double detuning(const ModelConfig& m, int j, int k) {
    if (!(j < k)) throw InvalidConfig("detuning requires j < k");
    return m.Omega - std::abs(m.omega(j) - m.omega(k));
}

bool equal_detuning(const ModelConfig& m) {
    switch (m.cfg) {
        case Configuration::Lambda: return std::abs(m.omega1 - m.omega2) <= kEqualDetuningTol;
        case Configuration::V: return std::abs(m.omega2 - m.omega3) <= kEqualDetuningTol;
        case Configuration::Xi: return false;
    }
    return false;
}

// ---- assembly ---------------------------------------------------------------

namespace {

struct Transition {
    std::size_t target;
    double amplitude;
};

// Move one atom from level `from` into level `to`; amplitude sqrt((n_to+1) n_from).
bool move_atom(const BasisState& s, int to, int from, BasisState& out, double& amp) {
    int occ[4] = {0, s.n1, s.n2, s.n3};
    if (occ[from] == 0) return false;
    amp = std::sqrt(static_cast<double>((occ[to] + 1) * occ[from]));
    ++occ[to];
    --occ[from];
    out = {s.nu, occ[1], occ[2], occ[3]};
    return true;
}

}  // namespace

OperatorMatrix assemble_hamiltonian(const HamiltonianTerms& terms, const BasisSet& b) {
    const double inv_sqrt_na = 1.0 / std::sqrt(static_cast<double>(b.Na()));
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(b.size() * 9);

    auto add_pair = [&](std::size_t i, std::size_t t, double v) {
        // Each unordered pair is generated from both ends; keep the one from the
        // larger index and mirror it so the matrix is symmetric bit for bit.
        if (v == 0.0 || t >= i) return;
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(t), v);
        triplets.emplace_back(static_cast<int>(t), static_cast<int>(i), v);
    };

    const LevelPair lam = levels_of(terms.lambda_pair);
    const struct {
        LevelPair levels;
        double mu;
    } couplings[3] = {{{1, 2}, terms.mu12}, {{1, 3}, terms.mu13}, {{2, 3}, terms.mu23}};

    for (std::size_t i = 0; i < b.size(); ++i) {
        const BasisState& s = b[i];
        const double diag = terms.Omega * s.nu + terms.omega[0] * s.n1 + terms.omega[1] * s.n2 + terms.omega[2] * s.n3;
        if (diag != 0.0) triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);

        BasisState moved;
        double atom_amp = 0.0;
        if (terms.lambda != 0.0) {
            for (auto [to, from] : {std::pair{lam.j, lam.k}, std::pair{lam.k, lam.j}}) {
                if (!move_atom(s, to, from, moved, atom_amp) || !b.contains(moved)) continue;
                add_pair(i, b.index_of(moved), terms.lambda * atom_amp);
            }
        }

        for (const auto& c : couplings) {
            if (c.mu == 0.0) continue;
            const double coeff = -c.mu * inv_sqrt_na;
            for (auto [to, from] : {std::pair{c.levels.j, c.levels.k}, std::pair{c.levels.k, c.levels.j}}) {
                if (!move_atom(s, to, from, moved, atom_amp) || !b.contains(moved)) continue;
                // photon up and down; amplitude sqrt of the larger photon number
                if (s.nu < b.nmax()) {
                    BasisState up = moved;
                    ++up.nu;
                    const double photon_amp = std::sqrt(static_cast<double>(s.nu + 1));
                    add_pair(i, b.index_of(up), coeff * (photon_amp * atom_amp));
                }
                if (s.nu > 0) {
                    BasisState down = moved;
                    --down.nu;
                    const double photon_amp = std::sqrt(static_cast<double>(s.nu));
                    add_pair(i, b.index_of(down), coeff * (photon_amp * atom_amp));
                }
            }
        }
    }
    return OperatorMatrix::from_triplets(b, triplets, true);
}

namespace {

void check_basis(const ModelConfig& m, const BasisSet& b) {
    if (!b.is_full() || b.Na() != m.Na || b.nmax() != m.nmax)
        throw BasisMismatch("basis (Na=" + std::to_string(b.Na()) + ", nmax=" + std::to_string(b.nmax()) +
                            ") does not match the model (Na=" + std::to_string(m.Na) +
                            ", nmax=" + std::to_string(m.nmax) + ")");
}

// |omega_j - omega_k|, snapped to zero at equal detuning.
double gap(const ModelConfig& m, int j, int k) {
    const double d = std::abs(m.omega(j) - m.omega(k));
    return d <= kEqualDetuningTol ? 0.0 : d;
}

}  // namespace

OperatorMatrix build_hamiltonian(const ModelConfig& m, const BasisSet& b) {
    m.validate();
    check_basis(m, b);
    HamiltonianTerms t;
    t.Omega = m.Omega;
    t.omega[0] = m.omega1;
    t.omega[1] = m.omega2;
    t.omega[2] = m.omega3;
    t.mu12 = m.mu12;
    t.mu13 = m.mu13;
    t.mu23 = m.mu23;
    return assemble_hamiltonian(t, b);
}

// ---- rotated frame ------------------------------------------------------------

double RotatedParameters::mu_t(Coupling c) const {
    switch (c) {
        case Coupling::Mu12: return mu_t12;
        case Coupling::Mu13: return mu_t13;
        case Coupling::Mu23: return mu_t23;
    }
    return 0.0;
}

HamiltonianTerms RotatedParameters::terms(double Omega) const {
    HamiltonianTerms t;
    t.Omega = Omega;
    for (int l = 0; l < 3; ++l) t.omega[l] = omega_t[l];
    t.lambda = lambda_t;
    t.lambda_pair = lambda_pair;
    t.mu12 = mu_t12;
    t.mu13 = mu_t13;
    t.mu23 = mu_t23;
    return t;
}

int isolated_level(Configuration cfg, Branch branch) {
    const bool first = branch == Branch::First;
    switch (cfg) {
        case Configuration::Xi: return first ? 3 : 1;
        case Configuration::Lambda: return first ? 1 : 2;
        case Configuration::V: return first ? 3 : 2;
    }
    return 0;
}

RotatedParameters rotated_parameters(const ModelConfig& m, Branch branch) {
    m.validate();
    RotatedParameters p;
    p.cfg = m.cfg;
    p.branch = branch;
    p.alpha = decoupling_angle(m, branch);
    p.rotation = rotation_pair(m.cfg);
    p.lambda_pair = forbidden_coupling(m.cfg);
    p.isolated_level = isolated_level(m.cfg, branch);

    const bool first = branch == Branch::First;
    const double w1 = m.omega1, w2 = m.omega2, w3 = m.omega3;

    switch (m.cfg) {
        case Configuration::Xi: {
            const double a = m.mu12 * m.mu12, c = m.mu23 * m.mu23, r2 = a + c;
            const double lam = gap(m, 1, 3) * m.mu12 * m.mu23 / r2;
            p.omega_t[0] = first ? (w1 * a + w3 * c) / r2 : (w1 * c + w3 * a) / r2;
            p.omega_t[1] = w2;
            p.omega_t[2] = first ? (w1 * c + w3 * a) / r2 : (w1 * a + w3 * c) / r2;
            p.lambda_t = first ? lam : -lam;
            (first ? p.mu_t12 : p.mu_t23) = std::sqrt(r2);
            p.surviving = first ? Coupling::Mu12 : Coupling::Mu23;
            break;
        }
        case Configuration::Lambda: {
            const double a = m.mu13 * m.mu13, c = m.mu23 * m.mu23, r2 = a + c;
            const double lam = gap(m, 1, 2) * m.mu13 * m.mu23 / r2;
            p.omega_t[0] = first ? (w1 * c + w2 * a) / r2 : (w1 * a + w2 * c) / r2;
            p.omega_t[1] = first ? (w1 * a + w2 * c) / r2 : (w1 * c + w2 * a) / r2;
            p.omega_t[2] = w3;
            p.lambda_t = first ? -lam : lam;
            (first ? p.mu_t23 : p.mu_t13) = std::sqrt(r2);
            p.surviving = first ? Coupling::Mu23 : Coupling::Mu13;
            break;
        }
        case Configuration::V: {
            const double a = m.mu12 * m.mu12, c = m.mu13 * m.mu13, r2 = a + c;
            const double lam = gap(m, 2, 3) * m.mu12 * m.mu13 / r2;
            p.omega_t[0] = w1;
            p.omega_t[1] = first ? (w2 * a + w3 * c) / r2 : (w2 * c + w3 * a) / r2;
            p.omega_t[2] = first ? (w2 * c + w3 * a) / r2 : (w2 * a + w3 * c) / r2;
            p.lambda_t = first ? lam : -lam;
            (first ? p.mu_t12 : p.mu_t13) = std::sqrt(r2);
            p.surviving = first ? Coupling::Mu12 : Coupling::Mu13;
            break;
        }
    }
    return p;
}

HamiltonianTerms rotated_terms(const ModelConfig& m, double alpha) {
    m.validate();
    const double c = std::cos(alpha), s = std::sin(alpha);
    const double c2 = c * c, s2 = s * s, cs = c * s;
    const double w1 = m.omega1, w2 = m.omega2, w3 = m.omega3;

    HamiltonianTerms t;
    t.Omega = m.Omega;
    t.lambda_pair = forbidden_coupling(m.cfg);
    switch (m.cfg) {
        case Configuration::Xi:  // U_31
            t.omega[0] = w1 * c2 + w3 * s2;
            t.omega[1] = w2;
            t.omega[2] = w1 * s2 + w3 * c2;
            t.lambda = (w3 - w1) * cs;
            t.mu12 = c * m.mu12 + s * m.mu23;
            t.mu23 = -s * m.mu12 + c * m.mu23;
            break;
        case Configuration::Lambda:  // U_12
            t.omega[0] = w1 * c2 + w2 * s2;
            t.omega[1] = w1 * s2 + w2 * c2;
            t.omega[2] = w3;
            t.lambda = -(w2 - w1) * cs;
            t.mu13 = c * m.mu13 - s * m.mu23;
            t.mu23 = s * m.mu13 + c * m.mu23;
            break;
        case Configuration::V:  // U_32
            t.omega[0] = w1;
            t.omega[1] = w2 * c2 + w3 * s2;
            t.omega[2] = w2 * s2 + w3 * c2;
            t.lambda = (w3 - w2) * cs;
            t.mu12 = c * m.mu12 + s * m.mu13;
            t.mu13 = -s * m.mu12 + c * m.mu13;
            break;
    }
    return t;
}

OperatorMatrix build_rotated_hamiltonian(const ModelConfig& m, const BasisSet& b, Branch branch) {
    check_basis(m, b);
    const auto p = rotated_parameters(m, branch);
    return assemble_hamiltonian(p.terms(m.Omega), b);
}

OperatorMatrix build_effective_two_level(const ModelConfig& m, const BasisSet& sub, Branch branch) {
    const auto p = rotated_parameters(m, branch);
    if (sub.is_full() || sub.shape().frozen_level != p.isolated_level)
        throw BasisMismatch("effective two-level Hamiltonian needs the sub-basis freezing level " +
                            std::to_string(p.isolated_level));
    if (sub.Na() != m.Na) throw BasisMismatch("sub-basis atom count does not match the model");

    HamiltonianTerms t = p.terms(m.Omega);
    t.lambda = 0.0;
    return assemble_hamiltonian(t, sub);
}

}  // namespace dicke3
