#pragma once

#include "dicke3/model.hpp"
#include "dicke3/rotations.hpp"
#include "dicke3/solver.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dicke3 {

/// Two-level content of a state in a frame where one atomic level is
/// isolated: amplitudes c(nu, n_s) on the sector where the isolated level
/// holds n_ell atoms, n_s being the occupation of the lower level of the
/// active pair (the upper one holds Na - n_ell - n_s).
struct QubitContent {
    LevelPair pair{2, 3};
    int isolated_level{1};
    int n_ell{0};
    Eigen::MatrixXcd coefficients;  ///< rows nu = 0..nmax, columns n_s = 0..Na-n_ell
    double sector_weight{0.0};      ///< sum of |c|^2
};

/// Reads the content of `s` on the sector of `isolated_level` holding the
/// largest weight (ties to the smaller occupation).
QubitContent extract_qubit_content(const QuantumState& s, int isolated_level);

/// |sum c_a^* c_b|^2 over matching (nu, n_s); tables must share their shape.
double content_overlap(const QubitContent& a, const QubitContent& b);

struct ProtocolStep {
    QuantumState state;
    QubitContent content;
    RotationSpec rotation;
    /// Set when the levels of the active transition are not degenerate, so
    /// the isolation is only approximate.
    bool off_detuning{false};
    double isolated_population{0.0};
};

/// Rotates into the first-branch frame: Lambda isolates level 1 and keeps the
/// (2,3) qubit, V isolates level 3 and keeps the (1,2) qubit. Xi is rejected
/// with InvalidConfig. `s` must live on a full basis.
ProtocolStep store(const ModelConfig& m, const QuantumState& s);

/// Switches a stored state to the second-branch frame through the single
/// rotation by alpha2 - alpha1: Lambda then isolates level 2, V level 2,
/// both leaving the (1,3) qubit.
ProtocolStep retrieve(const ModelConfig& m, const QuantumState& stored);

/// 1 when <A_ll> exceeds `threshold`, else 0. Threshold must lie in (0, 1).
int classical_bit(const QuantumState& s, int level, double threshold);
/// Threshold 1e-6 Na.
int classical_bit(const QuantumState& s, int level);

struct RabiSeries {
    std::vector<double> t;
    std::vector<Populations> stored;    ///< under the first-branch Hamiltonian
    std::vector<Populations> switched;  ///< frame-switched, second-branch Hamiltonian
    bool off_detuning{false};
};

/// Evolves |nu0; 0, 0, 1> (one Lambda atom) in the stored frame and its
/// frame-switched image in the retrieved frame. Needs cfg = Lambda, Na = 1
/// and nu0 <= m.nmax.
RabiSeries rabi_demo(const ModelConfig& m, int nu0, const std::vector<double>& t_grid);

}  // namespace dicke3
