#include "cli.hpp"

#include "dicke3/analysis.hpp"
#include "dicke3/error.hpp"
#include "dicke3/protocol.hpp"
#include "dicke3/rotations.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

namespace dicke3::cli {

namespace {

constexpr int kDigits = 12;

struct Csv {
    std::ostream& os;
    explicit Csv(std::ostream& o) : os(o) { os << std::setprecision(kDigits); }
};

std::vector<double> grid(double lo, double hi, double step) {
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> g;
    for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
}

CutoffOptions cutoff_options(const RunConfig& c) {
    CutoffOptions o;
    o.etol = c.etol;
    o.ptol = c.ptol;
    o.cap = c.cutoff_cap;
    return o;
}

std::string mu_name(Coupling k) { return to_string(k); }

GroundState solve_ground(const RunConfig& c, ModelConfig m, Frame frame) {
    m.nmax = resolve_cutoff(c, m);
    return frame_ground_state(m, enumerate_basis(m.Na, m.nmax), frame);
}

}  // namespace

int resolve_cutoff(const RunConfig& c, const ModelConfig& m) {
    if (c.nmax >= 0) return c.nmax;
    return converge_cutoff(m, cutoff_options(c));
}

void cmd_spectrum(const RunConfig& c, std::ostream& os) {
    ModelConfig m = c.model();
    m.nmax = resolve_cutoff(c, m);
    const Frame frame = parse_frame(c.frame);
    const BasisSet b = enumerate_basis(m.Na, m.nmax);

    bool labelled = false;
    int level = 0;
    const Branch br = frame == Frame::Branch2 ? Branch::Second : Branch::First;
    if (frame != Frame::Unrotated) {
        const RotatedParameters rp = rotated_parameters(m, br);
        labelled = c.bands && rp.lambda_t == 0.0;
        level = rp.isolated_level;
    }
    const Spectrum sp = diagonalize(frame == Frame::Unrotated ? build_hamiltonian(m, b)
                                                              : build_rotated_hamiltonian(m, b, br));

    Csv csv(os);
    os << "index,energy" << (labelled ? ",n_ell" : "") << '\n';
    write_metadata(os, c);
    os << "# nmax_used " << m.nmax << '\n';
    if (c.bands && !labelled) os << "# bands omitted: the isolated level is not conserved in this frame\n";
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k) {
        os << k << ',' << sp.eigenvalues(k);
        if (labelled) {
            std::vector<double> w(static_cast<std::size_t>(m.Na) + 1, 0.0);
            for (std::size_t i = 0; i < b.size(); ++i) {
                const double a = sp.eigenvectors(static_cast<Eigen::Index>(i), k);
                w[static_cast<std::size_t>(b[i].n(level))] += a * a;
            }
            os << ',' << std::distance(w.begin(), std::max_element(w.begin(), w.end()));
        }
        os << '\n';
    }
}

void cmd_populations(const RunConfig& c, std::ostream& unrotated, std::ostream& branch1, std::ostream& branch2) {
    const ModelConfig base = c.model();
    const auto [ax_a, ax_b] = ray_axes(base.cfg);
    std::ostream* outs[3] = {&unrotated, &branch1, &branch2};
    const Frame frames[3] = {Frame::Unrotated, Frame::Branch1, Frame::Branch2};
    for (auto* os : outs) {
        *os << std::setprecision(kDigits) << mu_name(ax_a) << ',' << mu_name(ax_b) << ",nmax,A11,A22,A33,photons\n";
        write_metadata(*os, c);
    }
    for (int f = 1; f < 3; ++f)
        *outs[f] << "# frame " << to_string(frames[f]) << "; the origin is skipped (undefined rotation angle)\n";

    for (double a : grid(c.a_min, c.a_max, c.step)) {
        for (double bv : grid(c.b_min, c.b_max, c.step)) {
            ModelConfig m = base;
            m.set_mu(ax_a, a);
            m.set_mu(ax_b, bv);
            m.nmax = resolve_cutoff(c, m);
            const BasisSet b = enumerate_basis(m.Na, m.nmax);
            for (int f = 0; f < 3; ++f) {
                if (f > 0 && a == 0.0 && bv == 0.0) continue;
                const Populations p = populations(frame_ground_state(m, b, frames[f]).state);
                *outs[f] << a << ',' << bv << ',' << m.nmax << ',' << p.a11 << ',' << p.a22 << ',' << p.a33 << ','
                         << p.photons << '\n';
            }
        }
    }
}

void cmd_phase_diagram(const RunConfig& c, std::ostream& os) {
    const ModelConfig m = c.model();
    ScanOptions opts;
    opts.frame = parse_frame(c.frame);
    opts.refine = c.refine;
    opts.cutoff = cutoff_options(c);
    if (c.nmax >= 0) opts.fixed_nmax = c.nmax;
    const PhaseDiagram pd = phase_diagram(m, default_pencil(c.rays), c.s_max, c.dmu, opts, c.threads);

    const auto [ax_a, ax_b] = ray_axes(m.cfg);
    Csv csv(os);
    os << "ray,theta,s," << mu_name(ax_a) << ',' << mu_name(ax_b) << ",F,chi\n";
    write_metadata(os, c);
    for (const auto& fm : pd.minima) {
        os << fm.ray << ',' << pd.thetas[fm.ray] << ',' << fm.s << ',' << fm.mu_a << ',' << fm.mu_b << ','
           << fm.fidelity << ',' << 2.0 * (1.0 - fm.fidelity) / (c.dmu * c.dmu) << '\n';
    }
}

void cmd_separatrix(const RunConfig& c, std::ostream& os) {
    const ModelConfig m = c.model();
    const double w21 = m.omega2 - m.omega1, w31 = m.omega3 - m.omega1;
    const auto [ax_a, ax_b] = ray_axes(m.cfg);
    Csv csv(os);
    os << mu_name(ax_a) << ',' << mu_name(ax_b) << '\n';
    write_metadata(os, c);
    for (int i = 0; i < c.samples; ++i) {
        const double u = static_cast<double>(i) / (c.samples - 1);
        if (m.cfg == Configuration::V) {
            const double theta = u * std::numbers::pi / 2;
            const double r = separatrix_v(m.Omega, w21, w31, theta);
            os << r * std::cos(theta) << ',' << r * std::sin(theta) << '\n';
            continue;
        }
        const double mu23 = u * c.s_max;
        const auto mu = m.cfg == Configuration::Xi ? separatrix_xi(m.Omega, w21, w31, mu23)
                                                   : separatrix_lambda(m.Omega, w21, w31, mu23);
        if (mu) os << *mu << ',' << mu23 << '\n';
    }
}

void cmd_store_retrieve(const RunConfig& c, std::ostream& os) {
    const ModelConfig m = c.model();
    if (m.cfg == Configuration::Xi) throw InvalidConfig("the store/retrieve exchange needs a Lambda or V configuration");
    const GroundState gs = solve_ground(c, m, Frame::Unrotated);
    const ProtocolStep st = store(m, gs.state);
    const ProtocolStep rt = retrieve(m, st.state);

    Csv csv(os);
    os << "quantity,value\n";
    write_metadata(os, c);
    os << "nmax," << gs.state.basis().nmax() << '\n';
    auto row = [&](const char* stage, const QuantumState& s) {
        const Populations p = populations(s);
        os << stage << "_A11," << p.a11 << '\n'
           << stage << "_A22," << p.a22 << '\n'
           << stage << "_A33," << p.a33 << '\n'
           << stage << "_photons," << p.photons << '\n';
    };
    row("ground", gs.state);
    row("stored", st.state);
    row("retrieved", rt.state);
    os << "stored_isolated_level," << st.content.isolated_level << '\n'
       << "stored_isolated_population," << st.isolated_population << '\n'
       << "stored_bit," << classical_bit(st.state, st.content.isolated_level) << '\n'
       << "retrieved_isolated_level," << rt.content.isolated_level << '\n'
       << "retrieved_isolated_population," << rt.isolated_population << '\n'
       << "retrieved_bit," << classical_bit(rt.state, rt.content.isolated_level) << '\n'
       << "content_overlap," << content_overlap(st.content, rt.content) << '\n'
       << "off_detuning," << (st.off_detuning ? 1 : 0) << '\n';
}

void cmd_rotate_check(const RunConfig& c, std::ostream& os) {
    if (c.Na > 6) throw InvalidConfig("rotate-check compares dense exponentials; use Na <= 6");
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const int nmax = std::max(c.nmax, 1);

    Csv csv(os);
    os << "j,k,l,m,max_error\n";
    write_metadata(os, c);
    for (Configuration cfg : {Configuration::Xi, Configuration::Lambda, Configuration::V}) {
        const LevelPair pair = rotation_pair(cfg);
        double err[3][3] = {};
        for (int na = 1; na <= c.Na; ++na) {
            const BasisSet b = enumerate_basis(na, nmax);
            for (int s = 0; s < c.samples; ++s) {
                const RotationSpec spec{pair.j, pair.k, angle(rng)};
                for (int l = 1; l <= 3; ++l)
                    for (int mm = 1; mm <= 3; ++mm) {
                        const auto closed = transform_generator_closed_form(spec, l, mm, b);
                        const auto exact = transform_exact(spec, collective_A(b, l, mm), b);
                        err[l - 1][mm - 1] = std::max(err[l - 1][mm - 1], max_abs_diff(closed, exact));
                    }
            }
        }
        for (int l = 1; l <= 3; ++l)
            for (int mm = 1; mm <= 3; ++mm)
                os << pair.j << ',' << pair.k << ',' << l << ',' << mm << ',' << err[l - 1][mm - 1] << '\n';
    }
}

void cmd_evolve(const RunConfig& c, std::ostream& os) {
    ModelConfig m = c.model();
    m.nmax = c.nmax >= 0 ? c.nmax : std::max(resolve_cutoff(c, m), c.nu0 + 32);
    const RabiSeries rs = rabi_demo(m, c.nu0, grid(0.0, c.t_max, c.dt));

    Csv csv(os);
    os << "t,stored_A11,stored_A22,stored_A33,stored_photons,switched_A11,switched_A22,switched_A33,switched_photons\n";
    write_metadata(os, c);
    os << "# nmax_used " << m.nmax << '\n';
    if (rs.off_detuning) os << "# warning: levels 1 and 2 are not degenerate; isolation is approximate\n";
    for (std::size_t i = 0; i < rs.t.size(); ++i) {
        const auto& p = rs.stored[i];
        const auto& q = rs.switched[i];
        os << rs.t[i] << ',' << p.a11 << ',' << p.a22 << ',' << p.a33 << ',' << p.photons << ',' << q.a11 << ','
           << q.a22 << ',' << q.a33 << ',' << q.photons << '\n';
    }
}

}  // namespace dicke3::cli
