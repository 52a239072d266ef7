#include "doctest.h"
#include "oracles.hpp"

#include "dicke3/error.hpp"
#include "dicke3/model.hpp"
#include "dicke3/rotations.hpp"
#include "dicke3/solver.hpp"

#include <cmath>
#include <random>

using namespace dicke3;

namespace {

void check_spectrum_invariants(const OperatorMatrix& h, const Spectrum& sp) {
    const Eigen::MatrixXd hd = h.dense();
    const double scale = std::max(1.0, h.max_abs());
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k) {
        const Eigen::VectorXd v = sp.eigenvectors.col(k);
        CHECK((hd * v - sp.eigenvalues(k) * v).norm() < 1e-9 * scale);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        if (k > 0) CHECK(sp.eigenvalues(k) >= sp.eigenvalues(k - 1));
        Eigen::Index at = 0;
        v.cwiseAbs().maxCoeff(&at);
        CHECK(v(at) > 0.0);
    }
}

ModelConfig xi_resonant(double mu12, double mu23, int Na, int nmax) {
    ModelConfig m;
    m.omega1 = 0.0;
    m.omega2 = 1.0;
    m.omega3 = 2.0;
    m.mu12 = mu12;
    m.mu23 = mu23;
    m.Na = Na;
    m.nmax = nmax;
    return m;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("uncoupled levels are the eigenvalues") {
    ModelConfig m;
    m.omega1 = -0.3;
    m.omega2 = 0.4;
    m.omega3 = 1.2;
    const auto b = enumerate_basis(1, 0);
    const auto h = build_hamiltonian(m, b);
    const auto sp = diagonalize(h);
    CHECK(sp.eigenvalues(0) == doctest::Approx(-0.3));
    CHECK(sp.eigenvalues(1) == doctest::Approx(0.4));
    CHECK(sp.eigenvalues(2) == doctest::Approx(1.2));
    check_spectrum_invariants(h, sp);
}

TEST_CASE("two-level closed form") {
    const auto b = enumerate_basis(1, 0);
    for (double g : {0.1, 0.5, 2.0}) {
        std::vector<Eigen::Triplet<double>> t{{1, 1, 1.0}, {0, 1, -g}, {1, 0, -g}, {2, 2, 50.0}};
        const auto h = OperatorMatrix::from_triplets(b, t, true);
        const auto sp = diagonalize(h);
        const auto [lo, hi] = oracle::two_level_pair(g);
        CHECK(sp.eigenvalues(0) == doctest::Approx(lo).epsilon(1e-13));
        CHECK(sp.eigenvalues(1) == doctest::Approx(hi).epsilon(1e-13));
        check_spectrum_invariants(h, sp);
        CHECK(ground_state(h).energy == doctest::Approx(lo).epsilon(1e-13));
    }
}

TEST_CASE("non-symmetric input is rejected") {
    const auto b = enumerate_basis(1, 0);
    std::vector<Eigen::Triplet<double>> t{{0, 1, 1.0}};
    const auto h = OperatorMatrix::from_triplets(b, t, false);
    CHECK_THROWS_AS(diagonalize(h), std::invalid_argument);
    CHECK_THROWS_AS(ground_state(h), std::invalid_argument);
}

TEST_CASE("spectrum invariants and unitary invariance on random models") {
    std::mt19937_64 rng(31);
    for (auto cfg : {Configuration::Xi, Configuration::Lambda, Configuration::V}) {
        const auto m = oracle::random_model(rng, cfg, 3, 8);
        const auto b = enumerate_basis(3, 8);
        const auto h = build_hamiltonian(m, b);
        const auto sp = diagonalize(h);
        check_spectrum_invariants(h, sp);
        CHECK((sp.eigenvalues - oracle::eigenvalues(h.dense())).cwiseAbs().maxCoeff() < 1e-10);
        const auto pair = rotation_pair(cfg);
        const auto hr = transform_exact({pair.j, pair.k, 0.77}, h, b);
        CHECK((diagonalize(hr).eigenvalues - sp.eigenvalues).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("zero coupling ground state is all atoms in the lowest level") {
    for (int Na : {1, 3}) {
        const auto m = xi_resonant(0.0, 0.0, Na, 4);
        const auto gs = ground_state(build_hamiltonian(m, enumerate_basis(Na, 4)));
        CHECK(std::abs(gs.state.amplitudes()(0) - 1.0) < 1e-12);
        CHECK(gs.energy == doctest::Approx(0.0));
        const auto p = populations(gs.state);
        CHECK(p.a11 == doctest::Approx(Na));
        CHECK(p.photons == doctest::Approx(0.0));
    }
}

TEST_CASE("collective region carries photons; dominant amplitude is positive") {
    const auto m = xi_resonant(1.2, 0.3, 2, 40);
    const auto gs = ground_state(build_hamiltonian(m, enumerate_basis(2, 40)));
    CHECK(populations(gs.state).photons > 0.5);
    const Eigen::VectorXd re = gs.state.amplitudes().real();
    Eigen::Index at = 0;
    re.cwiseAbs().maxCoeff(&at);
    CHECK(re(at) > 0.0);
    CHECK(gs.state.amplitudes().imag().norm() == 0.0);
}

TEST_CASE("banded ground state agrees with dense diagonalization") {
    std::mt19937_64 rng(9);
    for (auto cfg : {Configuration::Xi, Configuration::Lambda, Configuration::V})
        for (int trial = 0; trial < 3; ++trial) {
            auto m = oracle::random_model(rng, cfg, 4, 60);
            const auto b = enumerate_basis(4, 60);
            const auto h = build_hamiltonian(m, b);
            const auto gs = ground_state(h);
            const auto sp = diagonalize(h);
            CHECK(std::abs(gs.energy - sp.eigenvalues(0)) < 1e-10);
            CHECK(std::abs(gs.gap - (sp.eigenvalues(1) - sp.eigenvalues(0))) < 1e-9);
            const Eigen::VectorXd v = gs.state.amplitudes().real();
            CHECK((h.dense() * v - gs.energy * v).norm() < 1e-9 * std::max(1.0, h.max_abs()));
        }
}

TEST_CASE("degenerate ground states are flagged and resolved to the lowest index") {
    ModelConfig m;
    m.omega1 = 0.0;
    m.omega2 = 0.0;
    m.omega3 = 1.0;
    m.cfg = Configuration::Lambda;
    const auto b = enumerate_basis(1, 2);
    m.nmax = 2;
    const auto gs = ground_state(build_hamiltonian(m, b));
    CHECK(gs.near_degenerate);
    CHECK(gs.gap < kDegeneracyTol);
    CHECK(std::abs(gs.state.amplitudes()(0) - 1.0) < 1e-12);

    const auto ok = ground_state(build_hamiltonian(xi_resonant(0.2, 0.1, 1, 6), enumerate_basis(1, 6)));
    CHECK_FALSE(ok.near_degenerate);
}

TEST_CASE("populations and the sum rule") {
    const auto b = enumerate_basis(3, 2);
    const auto s = QuantumState::basis_state(b, {0, 3, 0, 0});
    const auto p = populations(s);
    CHECK(p.a11 == 3.0);
    CHECK(p.a22 == 0.0);
    CHECK(p.a33 == 0.0);
    CHECK(p.photons == 0.0);
    CHECK(p.level(1) == 3.0);
    CHECK_THROWS_AS(p.level(4), InvalidConfig);

    std::mt19937_64 rng(12);
    for (int t = 0; t < 5; ++t) {
        const auto m = oracle::random_model(rng, Configuration::V, 3, 10);
        const auto gs = ground_state(build_hamiltonian(m, enumerate_basis(3, 10)));
        const auto q = populations(gs.state);
        CHECK(std::abs(q.a11 + q.a22 + q.a33 - 3.0) < 1e-10);
        CHECK(std::abs(expectation(gs.state, photon_number(gs.state.basis())) - q.photons) < 1e-12);
    }
}

TEST_CASE("isolated level stays empty in the rotated ground state at equal detuning") {
    ModelConfig m;
    m.cfg = Configuration::Lambda;
    m.omega3 = 1.0;
    m.mu13 = 0.8;
    m.mu23 = 0.5;
    m.Na = 2;
    m.nmax = 30;
    const auto gs = ground_state(build_rotated_hamiltonian(m, enumerate_basis(2, 30), Branch::First));
    CHECK(populations(gs.state).a11 < 1e-10);
}

TEST_CASE("nondegenerate eigenstates have definite parity") {
    std::mt19937_64 rng(40);
    for (auto cfg : {Configuration::Xi, Configuration::Lambda, Configuration::V}) {
        const auto m = oracle::random_model(rng, cfg, 2, 10);
        const auto b = enumerate_basis(2, 10);
        const auto sp = diagonalize(build_hamiltonian(m, b));
        const auto par = parity(b, cfg);
        const auto n = sp.eigenvalues.size();
        for (Eigen::Index k = 0; k < n; ++k) {
            const bool isolated = (k == 0 || sp.eigenvalues(k) - sp.eigenvalues(k - 1) > 1e-8) &&
                                  (k == n - 1 || sp.eigenvalues(k + 1) - sp.eigenvalues(k) > 1e-8);
            if (!isolated) continue;
            CHECK(std::abs(expectation(sp.state(static_cast<std::size_t>(k)), par)) > 1.0 - 1e-10);
        }
    }
}

TEST_CASE("cutoff convergence") {
    SUBCASE("vacuum converges at the first candidate") {
        CHECK(converge_cutoff(xi_resonant(0.0, 0.0, 2, 0)) == 8);
    }
    SUBCASE("cutoff is monotone along a coupling line and grows into the collective region") {
        int last = 0;
        for (double mu : {0.2, 0.5, 0.8, 1.1, 1.4}) {
            const int n = converge_cutoff(xi_resonant(mu, 0.0, 2, 0));
            CHECK(n >= last);
            last = n;
        }
        CHECK(last > 8);
        const auto m = xi_resonant(1.4, 0.0, 2, last);
        const auto lo = ground_state(build_hamiltonian(m, enumerate_basis(2, last)));
        auto m2 = m;
        m2.nmax = 2 * last;
        const auto hi = ground_state(build_hamiltonian(m2, enumerate_basis(2, 2 * last)));
        CHECK(std::abs(lo.energy - hi.energy) < 1e-8);
        CHECK(photon_tail_weight(lo.state) < 1e-10);
    }
    SUBCASE("cap and tolerances") {
        CutoffOptions tight;
        tight.cap = 16;
        CHECK_THROWS_AS(converge_cutoff(xi_resonant(2.5, 0.0, 2, 0), tight), NonConvergence);
        CutoffOptions bad;
        bad.etol = 0.0;
        CHECK_THROWS_AS(converge_cutoff(xi_resonant(0.5, 0.0, 2, 0), bad), InvalidConfig);
    }
}

TEST_CASE("time evolution") {
    const auto m = xi_resonant(0.6, 0.4, 1, 12);
    const auto b = enumerate_basis(1, 12);
    const auto sp = diagonalize(build_hamiltonian(m, b));
    const auto s0 = QuantumState::basis_state(b, {2, 0, 1, 0});
    CHECK((evolve(sp, s0, 0.0).amplitudes() - s0.amplitudes()).norm() < 1e-12);

    const auto eig = sp.state(3);
    const auto p0 = populations(eig);
    for (double t : {0.5, 3.0, 17.0}) {
        const auto p = populations(evolve(sp, eig, t));
        CHECK(std::abs(p.a22 - p0.a22) < 1e-10);
        CHECK(std::abs(p.photons - p0.photons) < 1e-10);
    }

    const auto s1 = QuantumState::basis_state(b, {0, 1, 0, 0});
    const std::complex<double> ov0 = s0.amplitudes().dot(s1.amplitudes());
    for (double t : {1.0, 9.0}) {
        const auto a = evolve(sp, s0, t), c = evolve(sp, s1, t);
        CHECK(std::abs(std::abs(a.amplitudes().dot(c.amplitudes())) - std::abs(ov0)) < 1e-10);
        CHECK(std::abs(a.norm() - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(evolve(sp, QuantumState::basis_state(enumerate_basis(1, 3), {0, 1, 0, 0}), 1.0), BasisMismatch);
}

TEST_CASE("stored-frame evolution keeps the isolated level empty") {
    ModelConfig m;
    m.cfg = Configuration::Lambda;
    m.omega3 = 1.0;
    m.mu13 = 0.7;
    m.mu23 = 0.45;
    m.nmax = 20;
    const auto b = enumerate_basis(1, 20);
    const auto sp = diagonalize(build_rotated_hamiltonian(m, b, Branch::First));
    const auto s0 = QuantumState::basis_state(b, {1, 0, 1, 0});
    for (double t = 0.0; t <= 20.0; t += 2.5) CHECK(populations(evolve(sp, s0, t)).a11 < 1e-10);
}

TEST_CASE("state normalization is enforced") {
    const auto b = enumerate_basis(1, 0);
    CHECK_THROWS_AS(QuantumState(b, Eigen::VectorXcd::Ones(3)), std::invalid_argument);
    CHECK_THROWS_AS(QuantumState(b, Eigen::VectorXcd::Ones(2)), BasisMismatch);
    CHECK_THROWS_AS(QuantumState::normalized(b, Eigen::VectorXcd::Zero(3)), std::invalid_argument);
    CHECK(QuantumState::normalized(b, Eigen::VectorXcd::Ones(3)).norm() == doctest::Approx(1.0));
}

}
