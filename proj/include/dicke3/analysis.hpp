#pragma once

#include "dicke3/model.hpp"
#include "dicke3/operators.hpp"
#include "dicke3/solver.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dicke3 {

/// |<s1|s2>|^2. Throws BasisMismatch on different bases.
double fidelity(const QuantumState& s1, const QuantumState& s2);

/// d alpha / d mu for the decoupling angle, holding the other coupling of the
/// configuration fixed. Identical for both branches. Throws UndefinedAngle at
/// the origin and InvalidConfig for the forbidden coupling.
double dalpha_dmu(const ModelConfig& m, Branch branch, Coupling which);

/// Second-order estimate of the rotated-frame fidelity between unrotated
/// ground states psi(mu) and psi(mu + dmu):
///   |<psi'|psi>|^2 + dmu^2 alpha'^2 (<psi'|psi><psi'|K^2|psi> + |<psi'|K|psi>|^2)
/// Throws std::domain_error if any bracket has an imaginary part above 1e-12.
double fidelity_rot_second_order(const QuantumState& s_mu, const QuantumState& s_mu_dmu, const OperatorMatrix& k,
                                 double dalpha, double dmu);

/// Which Hamiltonian a scan diagonalizes.
enum class Frame { Unrotated, Branch1, Branch2 };

std::string to_string(Frame f);
Frame parse_frame(std::string_view text);

/// Coupling pair spanning the phase-diagram plane: Xi (mu12, mu23),
/// V (mu12, mu13), Lambda (mu13, mu23). Ray angle 0 lies along the first.
std::pair<Coupling, Coupling> ray_axes(Configuration cfg);

/// Ground state of the Hamiltonian selected by `frame`.
GroundState frame_ground_state(const ModelConfig& m, const BasisSet& b, Frame frame);

struct ScanOptions {
    Frame frame{Frame::Unrotated};
    /// Parabolic refinement of each minimum through its two neighbours.
    bool refine{true};
    /// Use this cutoff instead of converging one at the far end of the path.
    std::optional<int> fixed_nmax;
    CutoffOptions cutoff{};
    /// Minima with 1 - F below this are dropped.
    double noise_floor{1e-9};
    /// Retain the ground states in the sweep.
    bool keep_states{false};
};

struct FidelityMinimum {
    std::size_t ray{0};
    double s{0.0};  ///< position along the path
    double mu_a{0.0};
    double mu_b{0.0};
    double fidelity{1.0};
};

/// Ground states along a straight path, fidelities of consecutive pairs and
/// the strict local minima of that series. F[i] compares points i and i+1
/// and sits at position (s[i] + s[i+1]) / 2.
struct RaySweep {
    double theta{0.0};
    double dmu{0.0};
    int nmax{0};
    std::vector<double> s_values;
    std::vector<double> mu_a;
    std::vector<double> mu_b;
    std::vector<double> energies;
    std::vector<QuantumState> states;  ///< empty unless keep_states
    std::vector<double> F;
    std::vector<double> chi;  ///< 2 (1 - F) / dmu^2
    std::vector<FidelityMinimum> minima;
};

/// Sweep along the ray at angle `theta` (radians, [0, pi/2]) from the origin,
/// radii dmu, 2 dmu, ..., up to s_max. The template's couplings on the ray
/// axes are overwritten.
RaySweep scan_ray(const ModelConfig& m, double theta, double s_max, double dmu, const ScanOptions& options = {});

/// Sweep along a line where `vary` runs from `start` to `stop` in steps of
/// dmu and every other coupling keeps its template value.
RaySweep scan_line(const ModelConfig& m, Coupling vary, double start, double stop, double dmu,
                   const ScanOptions& options = {});

struct PhaseDiagram {
    ModelConfig model;
    Frame frame{Frame::Unrotated};
    std::vector<double> thetas;
    std::vector<FidelityMinimum> minima;  ///< ray order, then radius
    std::vector<RaySweep> rays;
};

/// `count` equally spaced angles over [0, pi/2].
std::vector<double> default_pencil(int count = 37);

/// Independent ray sweeps spread over `threads` workers; the result does not
/// depend on the thread count.
PhaseDiagram phase_diagram(const ModelConfig& m, const std::vector<double>& thetas, double s_max, double dmu,
                           const ScanOptions& options = {}, int threads = 1);

/// Xi boundary: mu12 solving Omega w21 = 4 mu12^2 + [2|mu23| - sqrt(Omega w31)]^2 Theta(.).
/// Empty when the step term alone exceeds Omega w21.
std::optional<double> separatrix_xi(double Omega, double omega21, double omega31, double mu23);

/// V boundary: distance from the origin along angle theta (from the mu12 axis)
/// to the ellipse 4 mu12^2/(Omega w21) + 4 mu13^2/(Omega w31) = 1.
double separatrix_v(double Omega, double omega21, double omega31, double theta);

/// Lambda boundary: mu13 solving Omega w31 = 4 mu13^2 + [2|mu23| - sqrt(Omega w21)]^2 Theta(.).
std::optional<double> separatrix_lambda(double Omega, double omega21, double omega31, double mu23);

}  // namespace dicke3
