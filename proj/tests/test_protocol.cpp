#include "doctest.h"
#include "oracles.hpp"

#include "dicke3/analysis.hpp"
#include "dicke3/error.hpp"
#include "dicke3/protocol.hpp"

#include <cmath>

using namespace dicke3;

namespace {

ModelConfig lambda_equal(double mu13, double mu23, int Na = 2) {
    ModelConfig m;
    m.cfg = Configuration::Lambda;
    m.omega1 = 0.0;
    m.omega2 = 0.0;
    m.omega3 = 1.0;
    m.mu13 = mu13;
    m.mu23 = mu23;
    m.Na = Na;
    m.nmax = 30;
    return m;
}

QuantumState ground(const ModelConfig& m) {
    return ground_state(build_hamiltonian(m, enumerate_basis(m.Na, m.nmax))).state;
}

double norm_of(const QuantumState& s) { return s.amplitudes().norm(); }

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("store empties the isolated level at equal detuning") {
    for (auto [a, b] : {std::pair{0.7, 0.4}, std::pair{0.3, 0.9}, std::pair{1.1, 1.1}}) {
        const auto m = lambda_equal(a, b);
        const auto st = store(m, ground(m));
        CHECK(populations(st.state).a11 < 1e-10);
        CHECK(st.isolated_population < 1e-10);
        CHECK_FALSE(st.off_detuning);
        CHECK(st.content.isolated_level == 1);
        CHECK(st.content.pair.j == 2);
        CHECK(st.content.pair.k == 3);
        CHECK(st.content.n_ell == 0);
        CHECK(st.content.coefficients.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(norm_of(st.state) - 1.0) < 1e-12);
        CHECK(classical_bit(st.state, 1) == 0);
    }
}

TEST_CASE("store is the identity without the 1-3 coupling") {
    const auto m = lambda_equal(0.0, 0.8);
    const auto g = ground(m);
    const auto st = store(m, g);
    CHECK(st.rotation.alpha == 0.0);
    CHECK((st.state.amplitudes() - g.amplitudes()).norm() < 1e-14);
}

TEST_CASE("stored state equals the rotated-frame ground state") {
    const auto m = lambda_equal(0.6, 0.5);
    const auto b = enumerate_basis(m.Na, m.nmax);
    const auto st = store(m, ground(m));
    const auto gr = ground_state(build_rotated_hamiltonian(m, b, Branch::First)).state;
    CHECK(fidelity(st.state, gr) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("V off detuning keeps the isolated population small and warns") {
    for (auto [a, b] : {std::pair{0.3, 0.3}, std::pair{0.6, 0.4}, std::pair{1.0, 0.8}}) {
        ModelConfig m;
        m.cfg = Configuration::V;
        m.omega2 = 0.8;
        m.omega3 = 1.0;
        m.mu12 = a;
        m.mu13 = b;
        m.Na = 1;
        m.nmax = 40;
        const auto st = store(m, ground(m));
        CHECK(st.off_detuning);
        CHECK(st.content.isolated_level == 3);
        CHECK(st.isolated_population <= 5e-4);
    }
}

TEST_CASE("retrieve moves the qubit to the 1-3 pair with overlap one") {
    for (auto [a, b] : {std::pair{0.7, 0.4}, std::pair{0.2, 0.9}}) {
        const auto m = lambda_equal(a, b);
        const auto st = store(m, ground(m));
        const auto rt = retrieve(m, st.state);
        CHECK(populations(rt.state).a22 < 1e-10);
        CHECK(rt.content.isolated_level == 2);
        CHECK(rt.content.pair.j == 1);
        CHECK(rt.content.pair.k == 3);
        CHECK(content_overlap(st.content, rt.content) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(norm_of(rt.state) - 1.0) < 1e-12);
        CHECK(rt.rotation.alpha == doctest::Approx(-std::numbers::pi / 2));
    }
}

TEST_CASE("retrieve maps the 2-3 sector with n1 atoms onto the 1-3 sector with n2 atoms") {
    const auto m = lambda_equal(0.5, 0.5, 3);
    const auto b = enumerate_basis(3, 4);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.size()));
    // Arbitrary (2,3) content with n1 = 1.
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].n1 == 1) v(static_cast<Eigen::Index>(i)) = {1.0 + b[i].nu + 0.3 * b[i].n2, 0.1 * b[i].n3};
    const QuantumState s = QuantumState::normalized(b, v);
    const auto before = extract_qubit_content(s, 1);
    const auto rt = retrieve(m, s);
    double other = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].n2 != 1) other += std::norm(rt.state.amplitudes()(static_cast<Eigen::Index>(i)));
    CHECK(other < 1e-10);
    CHECK(rt.content.n_ell == 1);
    CHECK(content_overlap(before, rt.content) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("rotations by successive angles compose additively") {
    const auto b = enumerate_basis(2, 3);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(b.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {std::sin(0.7 * i + 0.1), std::cos(1.3 * i)};
    v.normalize();
    const RotationSpec r1{1, 2, 0.37}, r2{1, 2, -1.21}, sum{1, 2, 0.37 - 1.21};
    const auto two = rotate_amplitudes(r2, b, rotate_amplitudes(r1, b, v));
    const auto one = rotate_amplitudes(sum, b, v);
    CHECK((two - one).norm() < 1e-12);
    CHECK(std::abs(two.norm() - 1.0) < 1e-12);
}

TEST_CASE("protocol rejects the ladder and foreign bases") {
    ModelConfig xi;
    xi.mu12 = 0.5;
    xi.mu23 = 0.5;
    xi.nmax = 4;
    const auto s = ground(xi);
    CHECK_THROWS_AS(store(xi, s), InvalidConfig);
    CHECK_THROWS_AS(retrieve(xi, s), InvalidConfig);

    const auto m = lambda_equal(0.5, 0.5);
    const auto sub = restrict_frozen_level(enumerate_basis(2, 3), 1, 0);
    CHECK_THROWS_AS(store(m, QuantumState::basis_state(sub, {0, 0, 1, 1})), BasisMismatch);
    CHECK_THROWS_AS(store(m, QuantumState::basis_state(enumerate_basis(3, 3), {0, 0, 1, 2})), BasisMismatch);
}

TEST_CASE("classical bits") {
    const auto b = enumerate_basis(1, 2);
    const auto s = QuantumState::basis_state(b, {0, 0, 1, 0});
    CHECK(classical_bit(s, 2) == 1);
    CHECK(classical_bit(s, 1) == 0);
    CHECK(classical_bit(s, 3) == 0);
    CHECK_THROWS_AS(classical_bit(s, 2, 0.0), InvalidConfig);
    CHECK_THROWS_AS(classical_bit(s, 2, 1.0), InvalidConfig);

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.size()));
    v(static_cast<Eigen::Index>(b.index_of({0, 0, 1, 0}))) = 0.3;
    v(static_cast<Eigen::Index>(b.index_of({0, 1, 0, 0}))) = 1.0;
    const auto mix = QuantumState::normalized(b, v);
    int prev = 1;
    for (double t = 0.001; t < 1.0; t += 0.01) {
        const int bit = classical_bit(mix, 2, t);
        CHECK(bit <= prev);
        prev = bit;
    }
}

TEST_CASE("Rabi demonstration keeps the isolated levels empty") {
    auto m = lambda_equal(0.4, 0.3, 1);
    m.nmax = 40;
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(0.5 * i);
    const auto rs = rabi_demo(m, 2, ts);
    REQUIRE(rs.stored.size() == ts.size());
    CHECK(rs.stored[0].a11 == doctest::Approx(0.0));
    CHECK(rs.stored[0].a22 == doctest::Approx(0.0));
    CHECK(rs.stored[0].a33 == doctest::Approx(1.0));
    CHECK_FALSE(rs.off_detuning);
    double swing = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(rs.stored[i].a11 < 1e-10);
        CHECK(std::abs(rs.stored[i].a22 + rs.stored[i].a33 - 1.0) < 1e-10);
        CHECK(rs.switched[i].a22 < 1e-10);
        swing = std::max(swing, rs.stored[i].a22);
    }
    CHECK(swing > 0.1);

    CHECK_THROWS_AS(rabi_demo(lambda_equal(0.4, 0.3, 2), 0, ts), InvalidConfig);
    CHECK_THROWS_AS(rabi_demo(m, 41, ts), InvalidConfig);
    CHECK_THROWS_AS(rabi_demo(m, 0, {0.0, std::nan("")}), InvalidConfig);
}

TEST_CASE("rotations between levels 2 and 3 leave level 1 untouched") {
    ModelConfig m;
    m.cfg = Configuration::V;
    m.omega2 = 1.0;
    m.omega3 = 1.0;
    m.mu12 = 0.8;
    m.mu13 = 0.5;
    m.Na = 3;
    m.nmax = 30;
    const auto g = ground(m);
    const auto st = store(m, g);
    CHECK(std::abs(populations(st.state).a11 - populations(g).a11) < 1e-12);
    CHECK(std::abs(norm_of(st.state) - 1.0) < 1e-12);
}

}
