#include "dicke3/protocol.hpp"

#include "dicke3/error.hpp"

#include <cmath>

namespace dicke3 {

namespace {

// Active pair left by isolating `level`, lower level first.
LevelPair active_pair(int level) {
    switch (level) {
        case 1: return {2, 3};
        case 2: return {1, 3};
        case 3: return {1, 2};
        default: throw InvalidConfig("atomic level must be 1, 2 or 3");
    }
}

void require_protocol_config(const ModelConfig& m) {
    if (m.cfg == Configuration::Xi)
        throw InvalidConfig("the store/retrieve exchange needs a Lambda or V configuration");
    m.validate();
}

void require_full_basis(const ModelConfig& m, const QuantumState& s) {
    const auto& b = s.basis();
    if (!b.is_full() || b.Na() != m.Na) throw BasisMismatch("protocol states must live on the model's full basis");
}

ProtocolStep finish(const ModelConfig& m, QuantumState state, const RotationSpec& spec, int isolated) {
    const double pop = populations(state).level(isolated);
    QubitContent content = extract_qubit_content(state, isolated);
    return ProtocolStep{std::move(state), std::move(content), spec, !equal_detuning(m), pop};
}

}  // namespace

QubitContent extract_qubit_content(const QuantumState& s, int isolated_level) {
    const auto& b = s.basis();
    QubitContent qc;
    qc.pair = active_pair(isolated_level);
    qc.isolated_level = isolated_level;

    std::vector<double> weight(static_cast<std::size_t>(b.Na()) + 1, 0.0);
    const auto& states = b.states();
    for (std::size_t i = 0; i < states.size(); ++i)
        weight[static_cast<std::size_t>(states[i].n(isolated_level))] +=
            std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
    std::size_t best = 0;
    for (std::size_t n = 1; n < weight.size(); ++n)
        if (weight[n] > weight[best] + 1e-12) best = n;
    qc.n_ell = static_cast<int>(best);
    qc.sector_weight = weight[best];

    qc.coefficients = Eigen::MatrixXcd::Zero(b.nmax() + 1, b.Na() - qc.n_ell + 1);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].n(isolated_level) != qc.n_ell) continue;
        qc.coefficients(states[i].nu, states[i].n(qc.pair.j)) = s.amplitudes()(static_cast<Eigen::Index>(i));
    }
    return qc;
}

double content_overlap(const QubitContent& a, const QubitContent& b) {
    if (a.coefficients.rows() != b.coefficients.rows() || a.coefficients.cols() != b.coefficients.cols())
        throw BasisMismatch("qubit contents have different shapes");
    const std::complex<double> z = (a.coefficients.conjugate().cwiseProduct(b.coefficients)).sum();
    return std::norm(z);
}

ProtocolStep store(const ModelConfig& m, const QuantumState& s) {
    require_protocol_config(m);
    require_full_basis(m, s);
    const RotationSpec spec = decoupling_rotation(m, Branch::First);
    QuantumState out(s.basis(), rotate_amplitudes(spec, s.basis(), s.amplitudes()));
    return finish(m, std::move(out), spec, isolated_level(m.cfg, Branch::First));
}

ProtocolStep retrieve(const ModelConfig& m, const QuantumState& stored) {
    require_protocol_config(m);
    require_full_basis(m, stored);
    RotationSpec spec = decoupling_rotation(m, Branch::Second);
    spec.alpha -= decoupling_angle(m, Branch::First);
    QuantumState out(stored.basis(), rotate_amplitudes(spec, stored.basis(), stored.amplitudes()));
    return finish(m, std::move(out), spec, isolated_level(m.cfg, Branch::Second));
}

int classical_bit(const QuantumState& s, int level, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidConfig("bit threshold must lie in (0, 1)");
    return populations(s).level(level) > threshold ? 1 : 0;
}

int classical_bit(const QuantumState& s, int level) { return classical_bit(s, level, 1e-6 * s.basis().Na()); }

RabiSeries rabi_demo(const ModelConfig& m, int nu0, const std::vector<double>& t_grid) {
    if (m.cfg != Configuration::Lambda) throw InvalidConfig("the Rabi demonstration uses the Lambda configuration");
    if (m.Na != 1) throw InvalidConfig("the Rabi demonstration uses a single atom");
    if (nu0 < 0 || nu0 > m.nmax) throw InvalidConfig("initial photon number must lie within the cutoff");
    for (double t : t_grid)
        if (!std::isfinite(t)) throw InvalidConfig("time grid must be finite");
    m.validate();

    const BasisSet b = enumerate_basis(m.Na, m.nmax);
    const Spectrum sp1 = diagonalize(build_rotated_hamiltonian(m, b, Branch::First));
    const Spectrum sp2 = diagonalize(build_rotated_hamiltonian(m, b, Branch::Second));

    const QuantumState prepared = QuantumState::basis_state(b, BasisState{nu0, 0, 0, 1});
    RotationSpec switch_spec = decoupling_rotation(m, Branch::Second);
    switch_spec.alpha -= decoupling_angle(m, Branch::First);
    const QuantumState switched(b, rotate_amplitudes(switch_spec, b, prepared.amplitudes()));

    RabiSeries out;
    out.off_detuning = !equal_detuning(m);
    out.t = t_grid;
    for (double t : t_grid) {
        out.stored.push_back(populations(evolve(sp1, prepared, t)));
        out.switched.push_back(populations(evolve(sp2, switched, t)));
    }
    return out;
}

}  // namespace dicke3
