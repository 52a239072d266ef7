#include "dicke3/analysis.hpp"

#include "dicke3/error.hpp"
#include "dicke3/rotations.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace dicke3 {

double fidelity(const QuantumState& s1, const QuantumState& s2) {
    if (!(s1.basis() == s2.basis())) throw BasisMismatch("fidelity of states on different bases");
    return std::norm(s1.amplitudes().dot(s2.amplitudes()));
}

double dalpha_dmu(const ModelConfig& m, Branch /*branch*/, Coupling which) {
    const auto [first, second] = ray_axes(m.cfg);
    if (which != first && which != second) throw InvalidConfig("coupling does not enter the decoupling angle");
    const double a = m.mu(first), b = m.mu(second);
    const double r2 = a * a + b * b;
    if (!(r2 > 0.0)) throw UndefinedAngle("decoupling angle is undefined at vanishing couplings");
    // alpha = atan(num/den) up to a branch constant; Xi and V put the ray's
    // first axis in the denominator, Lambda in the numerator.
    const bool first_is_denominator = m.cfg != Configuration::Lambda;
    const double num = first_is_denominator ? b : a;
    const double den = first_is_denominator ? a : b;
    const bool wrt_num = (which == second) == first_is_denominator;
    return wrt_num ? den / r2 : -num / r2;
}

double fidelity_rot_second_order(const QuantumState& s_mu, const QuantumState& s_mu_dmu, const OperatorMatrix& k,
                                 double dalpha, double dmu) {
    if (!(s_mu.basis() == s_mu_dmu.basis()) || !(s_mu.basis() == k.basis()))
        throw BasisMismatch("second-order fidelity operands on different bases");
    const Eigen::VectorXcd& psi = s_mu.amplitudes();
    const Eigen::VectorXcd& plus = s_mu_dmu.amplitudes();
    const auto kc = k.sparse().cast<std::complex<double>>();
    const Eigen::VectorXcd k_psi = kc * psi;
    const Eigen::VectorXcd kk_psi = kc * k_psi;

    const std::complex<double> c = plus.dot(psi);
    const std::complex<double> kb = plus.dot(k_psi);
    const std::complex<double> q = plus.dot(kk_psi);
    for (auto z : {c, kb, q})
        if (std::abs(z.imag()) > 1e-12) throw std::domain_error("bracket has a non-negligible imaginary part");

    const double d = dmu * dalpha;
    return c.real() * c.real() + d * d * (c.real() * q.real() + kb.real() * kb.real());
}

std::string to_string(Frame f) {
    switch (f) {
        case Frame::Unrotated: return "unrotated";
        case Frame::Branch1: return "branch1";
        case Frame::Branch2: return "branch2";
    }
    return "?";
}

Frame parse_frame(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t == "unrotated" || t == "none") return Frame::Unrotated;
    if (t == "branch1" || t == "1") return Frame::Branch1;
    if (t == "branch2" || t == "2") return Frame::Branch2;
    throw InvalidConfig("unknown frame '" + std::string(text) + "' (unrotated, branch1, branch2)");
}

std::pair<Coupling, Coupling> ray_axes(Configuration cfg) {
    switch (cfg) {
        case Configuration::Xi: return {Coupling::Mu12, Coupling::Mu23};
        case Configuration::V: return {Coupling::Mu12, Coupling::Mu13};
        case Configuration::Lambda: return {Coupling::Mu13, Coupling::Mu23};
    }
    throw InvalidConfig("unknown configuration");
}

GroundState frame_ground_state(const ModelConfig& m, const BasisSet& b, Frame frame) {
    switch (frame) {
        case Frame::Unrotated: return ground_state(build_hamiltonian(m, b));
        case Frame::Branch1: return ground_state(build_rotated_hamiltonian(m, b, Branch::First));
        case Frame::Branch2: return ground_state(build_rotated_hamiltonian(m, b, Branch::Second));
    }
    throw InvalidConfig("unknown frame");
}

namespace {

struct PathPoint {
    double s;
    double mu_a;
    double mu_b;
};

ModelConfig at_point(const ModelConfig& m, Coupling a, Coupling b, const PathPoint& p) {
    ModelConfig mc = m;
    mc.set_mu(a, p.mu_a);
    mc.set_mu(b, p.mu_b);
    return mc;
}

RaySweep sweep_path(const ModelConfig& m, Coupling a, Coupling b, const std::vector<PathPoint>& path, double dmu,
                    const ScanOptions& options) {
    if (path.size() < 2) throw InvalidConfig("a scan needs at least two points");
    if (!(options.noise_floor >= 0.0)) throw InvalidConfig("noise floor must be non-negative");

    RaySweep out;
    out.dmu = dmu;
    if (options.fixed_nmax) {
        if (*options.fixed_nmax < 0) throw InvalidConfig("photon cutoff must be non-negative");
        out.nmax = *options.fixed_nmax;
    } else {
        out.nmax = converge_cutoff(at_point(m, a, b, path.back()), options.cutoff);
    }
    const BasisSet basis = enumerate_basis(m.Na, out.nmax);

    std::vector<QuantumState> states;
    states.reserve(path.size());
    for (const auto& p : path) {
        ModelConfig mc = at_point(m, a, b, p);
        mc.nmax = out.nmax;
        GroundState gs = frame_ground_state(mc, basis, options.frame);
        out.s_values.push_back(p.s);
        out.mu_a.push_back(p.mu_a);
        out.mu_b.push_back(p.mu_b);
        out.energies.push_back(gs.energy);
        states.push_back(std::move(gs.state));
    }

    const std::size_t n = states.size() - 1;
    out.F.resize(n);
    out.chi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.F[i] = fidelity(states[i], states[i + 1]);
        out.chi[i] = 2.0 * (1.0 - out.F[i]) / (dmu * dmu);
    }

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double f = out.F[i];
        if (!(f < out.F[i - 1] && f < out.F[i + 1]) || 1.0 - f < options.noise_floor) continue;
        const double mid = 0.5 * (out.s_values[i] + out.s_values[i + 1]);
        double offset = 0.0, f_min = f;
        if (options.refine) {
            const double fm = out.F[i - 1], fp = out.F[i + 1];
            const double curv = fm - 2.0 * f + fp;
            if (curv > 0.0) {
                const double step = out.s_values[i + 1] - out.s_values[i];
                offset = std::clamp(0.5 * step * (fm - fp) / curv, -0.5 * step, 0.5 * step);
                const double u = offset / step;
                f_min = f + 0.5 * u * (fp - fm) + 0.5 * u * u * curv;
            }
        }
        // positions interpolate linearly between neighbouring points
        const double s = mid + offset;
        const double t = (s - out.s_values[i]) / (out.s_values[i + 1] - out.s_values[i]);
        FidelityMinimum fm;
        fm.s = s;
        fm.mu_a = out.mu_a[i] + t * (out.mu_a[i + 1] - out.mu_a[i]);
        fm.mu_b = out.mu_b[i] + t * (out.mu_b[i + 1] - out.mu_b[i]);
        fm.fidelity = f_min;
        out.minima.push_back(fm);
    }
    if (options.keep_states) out.states = std::move(states);
    return out;
}

}  // namespace

RaySweep scan_ray(const ModelConfig& m, double theta, double s_max, double dmu, const ScanOptions& options) {
    constexpr double half_pi = std::numbers::pi / 2;
    if (!(theta >= -1e-12 && theta <= half_pi + 1e-12)) throw InvalidConfig("ray angle must lie in [0, pi/2]");
    if (!(dmu > 0.0)) throw InvalidConfig("scan step must be positive");
    if (!(s_max >= 3.0 * dmu)) throw InvalidConfig("ray must hold at least three points");
    theta = std::clamp(theta, 0.0, half_pi);

    const auto [a, b] = ray_axes(m.cfg);
    // exact zeros on the axes keep the ray inside the closed quadrant
    const double ca = theta == half_pi ? 0.0 : std::cos(theta);
    const double cb = theta == 0.0 ? 0.0 : std::sin(theta);
    const auto count = static_cast<std::size_t>(std::floor(s_max / dmu + 1e-9));
    std::vector<PathPoint> path;
    path.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double s = static_cast<double>(i) * dmu;
        path.push_back({s, s * ca, s * cb});
    }
    RaySweep out = sweep_path(m, a, b, path, dmu, options);
    out.theta = theta;
    return out;
}

RaySweep scan_line(const ModelConfig& m, Coupling vary, double start, double stop, double dmu,
                   const ScanOptions& options) {
    if (!(dmu > 0.0)) throw InvalidConfig("scan step must be positive");
    if (!(stop > start) || start < 0.0) throw InvalidConfig("line scan needs 0 <= start < stop");
    const auto [a, b] = ray_axes(m.cfg);
    if (vary != a && vary != b) throw InvalidConfig("line scans vary one of the phase-diagram couplings");
    const bool along_a = vary == a;
    const double fixed = m.mu(along_a ? b : a);

    const auto count = static_cast<std::size_t>(std::floor((stop - start) / dmu + 1e-9));
    std::vector<PathPoint> path;
    for (std::size_t i = 0; i <= count; ++i) {
        const double s = start + static_cast<double>(i) * dmu;
        path.push_back(along_a ? PathPoint{s, s, fixed} : PathPoint{s, fixed, s});
    }
    RaySweep out = sweep_path(m, a, b, path, dmu, options);
    out.theta = along_a ? 0.0 : std::numbers::pi / 2;
    return out;
}

std::vector<double> default_pencil(int count) {
    if (count < 2) throw InvalidConfig("a pencil needs at least two rays");
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = std::numbers::pi / 2 * i / (count - 1);
    return t;
}

PhaseDiagram phase_diagram(const ModelConfig& m, const std::vector<double>& thetas, double s_max, double dmu,
                           const ScanOptions& options, int threads) {
    if (thetas.empty()) throw InvalidConfig("phase diagram needs at least one ray");
    PhaseDiagram pd;
    pd.model = m;
    pd.frame = options.frame;
    pd.thetas = thetas;
    pd.rays.resize(thetas.size());

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(thetas.size());
    auto worker = [&] {
        for (std::size_t i = next++; i < thetas.size(); i = next++) {
            try {
                pd.rays[i] = scan_ray(m, thetas[i], s_max, dmu, options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n_threads = static_cast<std::size_t>(std::clamp<int>(threads, 1, static_cast<int>(thetas.size())));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (std::size_t i = 0; i < pd.rays.size(); ++i) {
        for (auto fm : pd.rays[i].minima) {
            fm.ray = i;
            pd.minima.push_back(fm);
        }
    }
    return pd;
}

namespace {

void check_frequencies(double Omega, double w21, double w31) {
    if (!(Omega > 0.0)) throw InvalidConfig("Omega must be positive");
    if (w21 < 0.0 || w31 < 0.0) throw InvalidConfig("level spacings must be non-negative");
}

std::optional<double> step_boundary(double Omega, double w_main, double w_step, double mu_other) {
    const double step = std::max(0.0, 2.0 * std::abs(mu_other) - std::sqrt(Omega * w_step));
    const double rest = Omega * w_main - step * step;
    if (rest < 0.0) return std::nullopt;
    return std::sqrt(rest) / 2.0;
}

}  // namespace

std::optional<double> separatrix_xi(double Omega, double omega21, double omega31, double mu23) {
    check_frequencies(Omega, omega21, omega31);
    return step_boundary(Omega, omega21, omega31, mu23);
}

std::optional<double> separatrix_lambda(double Omega, double omega21, double omega31, double mu23) {
    check_frequencies(Omega, omega21, omega31);
    return step_boundary(Omega, omega31, omega21, mu23);
}

double separatrix_v(double Omega, double omega21, double omega31, double theta) {
    check_frequencies(Omega, omega21, omega31);
    if (omega21 == 0.0 || omega31 == 0.0) throw InvalidConfig("ellipse boundary needs non-zero level spacings");
    const double c = std::cos(theta), s = std::sin(theta);
    return 0.5 / std::sqrt(c * c / (Omega * omega21) + s * s / (Omega * omega31));
}

}  // namespace dicke3
