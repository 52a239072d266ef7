#pragma once

#include "dicke3/basis.hpp"
#include "dicke3/operators.hpp"
#include "dicke3/types.hpp"

namespace dicke3 {

/// Tolerance on |omega_j - omega_k| below which two levels count as
/// degenerate (equal detuning).
inline constexpr double kEqualDetuningTol = 1e-12;

/// Physical parameters of the three-level Dicke model plus its truncation.
/// Energies are in units of the field frequency unless Omega is changed.
struct ModelConfig {
    Configuration cfg{Configuration::Xi};
    double Omega{1.0};
    double omega1{0.0};
    double omega2{0.0};
    double omega3{0.0};
    double mu12{0.0};
    double mu13{0.0};
    double mu23{0.0};
    int Na{1};
    int nmax{0};

    double omega(int level) const;
    double mu(Coupling c) const;
    double mu(int j, int k) const { return mu(coupling_of(j, k)); }
    void set_mu(Coupling c, double value);

    /// Throws InvalidConfig when an invariant is violated: level ordering,
    /// Omega > 0, non-negative couplings, the forbidden coupling being zero,
    /// Na >= 1, nmax >= 0.
    void validate() const;
};

/// The coupling that must vanish for a configuration.
Coupling forbidden_coupling(Configuration cfg);

/// Detuning Omega - |omega_j - omega_k| for j < k.
double detuning(const ModelConfig& m, int j, int k);

/// True for Lambda with omega1 == omega2 or V with omega2 == omega3.
bool equal_detuning(const ModelConfig& m);

/// Coefficients of the generic Hamiltonian
///   Omega a'a + sum_l w_l A_ll + lambda (A_jk + A_kj)
///   - (a' + a)/sqrt(Na) sum_{l<m} mu_lm (A_lm + A_ml).
struct HamiltonianTerms {
    double Omega{1.0};
    double omega[3]{0.0, 0.0, 0.0};
    double lambda{0.0};
    Coupling lambda_pair{Coupling::Mu13};
    double mu12{0.0};
    double mu13{0.0};
    double mu23{0.0};
};

OperatorMatrix assemble_hamiltonian(const HamiltonianTerms& terms, const BasisSet& b);

/// Full Hamiltonian for `m` on `b`; `b` must be the full basis for (m.Na, m.nmax).
OperatorMatrix build_hamiltonian(const ModelConfig& m, const BasisSet& b);

/// Rotated-frame coefficients for one decoupling choice.
struct RotatedParameters {
    Configuration cfg{Configuration::Xi};
    Branch branch{Branch::First};
    double alpha{0.0};
    LevelPair rotation{3, 1};  ///< (j, k) of U_jk
    double omega_t[3]{0.0, 0.0, 0.0};
    double lambda_t{0.0};
    Coupling lambda_pair{Coupling::Mu13};
    double mu_t12{0.0};
    double mu_t13{0.0};
    double mu_t23{0.0};
    int isolated_level{0};    ///< level left without field coupling
    Coupling surviving{Coupling::Mu12};

    double mu_t(Coupling c) const;
    HamiltonianTerms terms(double Omega) const;
};

/// Closed-form rotated coefficients for the decoupling angle of `branch`.
/// Throws UndefinedAngle when both couplings of the configuration vanish.
RotatedParameters rotated_parameters(const ModelConfig& m, Branch branch);

/// Rotated coefficients for an arbitrary angle of the configuration's
/// rotation, before any decoupling condition is imposed.
HamiltonianTerms rotated_terms(const ModelConfig& m, double alpha);

/// Rotated Hamiltonian assembled from the decoupling parameters.
OperatorMatrix build_rotated_hamiltonian(const ModelConfig& m, const BasisSet& b, Branch branch);

/// Effective two-level Dicke Hamiltonian on the sub-basis where the isolated
/// level of `branch` holds a fixed number of atoms, including the constant
/// shift of the isolated level. `sub` must come from restrict_frozen_level
/// with that level.
OperatorMatrix build_effective_two_level(const ModelConfig& m, const BasisSet& sub, Branch branch);

/// Isolated level of the rotated frame for (cfg, branch).
int isolated_level(Configuration cfg, Branch branch);

}  // namespace dicke3
