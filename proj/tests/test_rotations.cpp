#include "doctest.h"
#include "oracles.hpp"

#include "dicke3/error.hpp"
#include "dicke3/rotations.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dicke3;

namespace {

constexpr double pi = std::numbers::pi;

double dense_max(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

constexpr LevelPair kPairs[] = {{3, 1}, {1, 2}, {3, 2}};

}  // namespace

TEST_SUITE("rotations") {

TEST_CASE("generator in the defining representation") {
    const auto b = enumerate_basis(1, 0);
    Eigen::Matrix3d expected;
    expected << 0, 1, 0, -1, 0, 0, 0, 0, 0;
    CHECK(dense_max(generator_K(b, 1, 2).dense() - expected) == 0.0);
}

TEST_CASE("generators are antisymmetric") {
    const auto b = enumerate_basis(3, 2);
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            if (j == k) {
                CHECK_THROWS_AS(generator_K(b, j, k), InvalidConfig);
                continue;
            }
            const Eigen::MatrixXd kk = generator_K(b, j, k).dense();
            CHECK(dense_max(kk + kk.transpose()) == 0.0);
            CHECK(dense_max(kk + generator_K(b, k, j).dense()) == 0.0);
        }
}

TEST_CASE("rotation matrix basics") {
    const auto b = enumerate_basis(2, 3);
    const auto n = static_cast<Eigen::Index>(b.size());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    CHECK(dense_max(rotation_matrix({1, 2, 0.0}, b).dense() - id) < 1e-15);

    const auto b1 = enumerate_basis(1, 0);
    const Eigen::MatrixXd u = rotation_matrix({1, 2, pi}, b1).dense();
    CHECK(dense_max(u.topLeftCorner(2, 2) + Eigen::Matrix2d::Identity()) < 1e-12);
    CHECK(u(2, 2) == doctest::Approx(1.0));

    for (const auto& p : kPairs) {
        const Eigen::MatrixXd a = rotation_matrix({p.j, p.k, 0.83}, b).dense();
        const Eigen::MatrixXd ai = rotation_matrix({p.j, p.k, -0.83}, b).dense();
        CHECK(dense_max(a * ai - id) < 1e-12);
        CHECK(dense_max(a * a.transpose() - id) < 1e-12);
        CHECK(dense_max(a - oracle::rotation(b, p.j, p.k, 0.83)) < 1e-12);
    }
}

TEST_CASE("rotation acts on the atomic factor only") {
    const auto b = enumerate_basis(3, 4);
    const auto u = rotation_matrix({3, 2, 1.1}, b);
    const Eigen::MatrixXd ud = u.dense();
    const Eigen::MatrixXd n = photon_number(b).dense();
    CHECK(dense_max(ud * n - n * ud) < 1e-12);
    const Eigen::MatrixXd na =
        collective_A(b, 1, 1).dense() + collective_A(b, 2, 2).dense() + collective_A(b, 3, 3).dense();
    CHECK(dense_max(ud * na - na * ud) < 1e-12);

    const Eigen::MatrixXd atomic = atomic_rotation({3, 2, 1.1}, 3);
    const auto d = static_cast<Eigen::Index>(b.atomic_dim());
    for (int blk = 0; blk <= 4; ++blk) CHECK(dense_max(ud.block(blk * d, blk * d, d, d) - atomic) < 1e-15);
}

TEST_CASE("closed-form examples") {
    const auto b = enumerate_basis(2, 1);
    for (int l = 1; l <= 3; ++l)
        for (int m = 1; m <= 3; ++m)
            CHECK(dense_max(transform_generator_closed_form({3, 1, 0.0}, l, m, b).dense() -
                            collective_A(b, l, m).dense()) < 1e-15);
    CHECK(dense_max(transform_generator_closed_form({1, 2, pi / 2}, 1, 1, b).dense() -
                    collective_A(b, 2, 2).dense()) < 1e-15);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(b.size(), b.size());
    for (int l = 1; l <= 3; ++l) sum += transform_generator_closed_form({3, 2, 0.4}, l, l, b).dense();
    CHECK(dense_max(sum - 2.0 * Eigen::MatrixXd::Identity(b.size(), b.size())) < 1e-14);
}

TEST_CASE("exact transform examples") {
    const auto b = enumerate_basis(2, 2);
    const RotationSpec spec{1, 2, 0.37};
    const auto id = OperatorMatrix::identity(b);
    CHECK(max_abs_diff(transform_exact(spec, id, b), id) < 1e-14);
    const auto kk = generator_K(b, 1, 2);
    CHECK(max_abs_diff(transform_exact(spec, kk, b), kk) < 1e-14);

    const Eigen::MatrixXd x = collective_A(b, 1, 2).dense() + collective_A(b, 2, 1).dense();
    const Eigen::MatrixXd exact = transform_exact(spec, OperatorMatrix(b, x.sparseView(), true), b).dense();
    const Eigen::MatrixXd closed = transform_generator_closed_form(spec, 1, 2, b).dense() +
                                   transform_generator_closed_form(spec, 2, 1, b).dense();
    CHECK(dense_max(exact - closed) < 1e-12);
}

TEST_CASE("closed forms match the exponential for every generator and pair") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int Na = 1; Na <= 3; ++Na) {
        const auto b = enumerate_basis(Na, 0);
        for (const auto& p : kPairs)
            for (int s = 0; s < 10; ++s) {
                const double alpha = angle(rng);
                const Eigen::MatrixXd u = oracle::rotation(b, p.j, p.k, alpha);
                const oracle::ProductSpace ps(b);
                for (int l = 1; l <= 3; ++l)
                    for (int m = 1; m <= 3; ++m) {
                        const Eigen::MatrixXd closed = transform_generator_closed_form({p.j, p.k, alpha}, l, m, b).dense();
                        CHECK(dense_max(closed - u * ps.A(l, m) * u.transpose()) < 1e-12);
                    }
            }
    }
}

TEST_CASE("rotations compose additively") {
    const auto b = enumerate_basis(3, 0);
    for (const auto& p : kPairs)
        for (int l = 1; l <= 3; ++l)
            for (int m = 1; m <= 3; ++m) {
                const auto inner = transform_generator_closed_form({p.j, p.k, 0.9}, l, m, b);
                const auto twice = transform_exact({p.j, p.k, -0.35}, inner, b);
                const auto once = transform_generator_closed_form({p.j, p.k, 0.55}, l, m, b);
                CHECK(max_abs_diff(twice, once) < 1e-11);
            }
}

TEST_CASE("decoupling angle table") {
    ModelConfig xi;
    xi.mu12 = 1.0;
    xi.mu23 = 1.0;
    CHECK(decoupling_angle(xi, Branch::First) == doctest::Approx(pi / 4));
    CHECK(decoupling_angle(xi, Branch::Second) == doctest::Approx(-pi / 4));

    ModelConfig la;
    la.cfg = Configuration::Lambda;
    la.omega2 = 0.0;
    la.mu13 = 1.0;
    CHECK(decoupling_angle(la, Branch::Second) == 0.0);
    CHECK(decoupling_angle(la, Branch::First) == doctest::Approx(pi / 2));

    ModelConfig v;
    v.cfg = Configuration::V;
    v.mu12 = 1.0;
    v.mu13 = std::sqrt(3.0);
    CHECK(decoupling_angle(v, Branch::Second) == doctest::Approx(-pi / 6));
    CHECK(decoupling_angle(v, Branch::First) == doctest::Approx(pi / 3));

    ModelConfig none;
    CHECK_THROWS_AS(decoupling_angle(none, Branch::First), UndefinedAngle);
    const auto spec = decoupling_rotation(v, Branch::First);
    CHECK(spec.j == 3);
    CHECK(spec.k == 2);
}

TEST_CASE("branch angles differ by a quarter turn") {
    std::mt19937_64 rng(2);
    for (auto cfg : {Configuration::Xi, Configuration::Lambda, Configuration::V})
        for (int t = 0; t < 10; ++t) {
            const auto m = oracle::random_model(rng, cfg, 1, 0);
            CHECK(decoupling_angle(m, Branch::First) - decoupling_angle(m, Branch::Second) ==
                  doctest::Approx(pi / 2));
        }
}

TEST_CASE("state rotation matches the rotation matrix") {
    const auto b = enumerate_basis(2, 3);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {std::sin(1.0 + i), std::cos(2.0 * i)};
    const RotationSpec spec{3, 1, -0.6};
    const Eigen::VectorXcd expected = rotation_matrix(spec, b).dense().cast<std::complex<double>>() * v;
    CHECK((rotate_amplitudes(spec, b, v) - expected).norm() < 1e-13);
    CHECK(std::abs(rotate_amplitudes(spec, b, v).norm() - v.norm()) < 1e-12);
}

TEST_CASE("matrix exponential agrees with the Pade oracle") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 1.5);
    for (int n : {3, 10, 25}) {
        Eigen::MatrixXd a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = g(rng);
        const Eigen::MatrixXd skew = a - a.transpose();
        const Eigen::MatrixXd ref = skew.exp();
        CHECK(dense_max(expm(skew) - ref) < 1e-11 * std::max(1.0, dense_max(ref)));
    }
}

}
