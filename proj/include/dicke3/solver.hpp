#pragma once

#include "dicke3/basis.hpp"
#include "dicke3/model.hpp"
#include "dicke3/operators.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace dicke3 {

/// Normalized state vector over a basis.
class QuantumState {
public:
    /// Throws std::invalid_argument unless the norm is 1 within 1e-12.
    QuantumState(BasisSet basis, Eigen::VectorXcd amplitudes);

    /// Rescales `amplitudes` to unit norm first.
    static QuantumState normalized(BasisSet basis, Eigen::VectorXcd amplitudes);
    static QuantumState basis_state(const BasisSet& basis, const BasisState& s);

    const BasisSet& basis() const noexcept { return basis_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    double norm() const { return amplitudes_.norm(); }

private:
    BasisSet basis_;
    Eigen::VectorXcd amplitudes_;
};

/// Full eigendecomposition; eigenvalues ascending, eigenvectors as columns,
/// each with its largest-magnitude component positive.
struct Spectrum {
    BasisSet basis;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    QuantumState state(std::size_t k) const;
};

struct GroundState {
    QuantumState state;
    double energy{0.0};
    /// E1 - E0 over the whole spectrum (infinity for a one-state basis).
    double gap{0.0};
    /// Set when gap < kDegeneracyTol; `state` is then one representative.
    bool near_degenerate{false};
};

inline constexpr double kDegeneracyTol = 1e-10;

/// Decomposes H into its decoupled blocks and diagonalizes each densely.
/// Throws std::invalid_argument when H is not symmetric to 1e-12 relative.
Spectrum diagonalize(const OperatorMatrix& h);

/// Lowest eigenpair via banded reduction per decoupled block. Among blocks
/// whose lowest energies tie within kDegeneracyTol, the one holding the
/// lowest basis index wins.
GroundState ground_state(const OperatorMatrix& h);

/// Flips the sign of `v` so its largest-magnitude entry is positive
/// (ties within 1e-10 relative resolved to the lowest index).
void apply_sign_convention(Eigen::Ref<Eigen::VectorXd> v);

struct Populations {
    double a11{0.0};
    double a22{0.0};
    double a33{0.0};
    double photons{0.0};

    double level(int l) const;
};

Populations populations(const QuantumState& s);

/// <s|X|s>, real part.
double expectation(const QuantumState& s, const OperatorMatrix& x);

/// Probability carried by the photon blocks nu >= nmax - blocks + 1.
double photon_tail_weight(const QuantumState& s, int blocks = 2);

/// exp(-i H t) s0 expanded in the spectrum.
QuantumState evolve(const Spectrum& sp, const QuantumState& s0, double t);

struct CutoffOptions {
    double etol{1e-8};
    double ptol{1e-10};
    int start{8};
    int cap{512};
};

/// Smallest cutoff of the doubling schedule start, 2 start, ... whose ground
/// energy agrees with the doubled cutoff within etol and whose top two photon
/// blocks carry less than ptol. Every diagonalized cutoff stays <= cap;
/// NonConvergence otherwise. The cutoff in `m` is ignored.
int converge_cutoff(const ModelConfig& m, const CutoffOptions& options = {});

}  // namespace dicke3
