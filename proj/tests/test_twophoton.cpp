#include "oracles.hpp"
#include "qnb/constants.hpp"
#include "qnb/elements.hpp"
#include "qnb/errors.hpp"
#include "qnb/twophoton.hpp"

#include <doctest.h>

#include <random>

using namespace qnb;

static double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

TEST_CASE("rotation matrix") {
    CHECK(max_abs(rotation_matrix(0.0) - Mat2::Identity()) == 0.0);
    Mat2 quarter;
    quarter << 0.0, -1.0, 1.0, 0.0;
    CHECK(max_abs(rotation_matrix(pi / 2) - quarter) < 1e-15);
    CHECK(max_abs(rotation_matrix(0.3) * rotation_matrix(0.4) - rotation_matrix(0.7)) < 1e-14);
}

TEST_CASE("squeeze matrix") {
    CHECK(max_abs(squeeze_matrix(0.0, 0.9) - Mat2::Identity()) < 1e-15);
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::exp(1.0);
    d(1, 1) = std::exp(-1.0);
    CHECK(max_abs(squeeze_matrix(1.0, 0.0) - d) < 1e-15);
    CHECK(std::abs(squeeze_matrix(1.1513, 0.7).determinant() - 1.0) < 1e-12);
}

TEST_CASE("dB conversion") {
    CHECK(db_to_r(10.0) == doctest::Approx(oracle::r_10db).epsilon(1e-15));
    CHECK(db_to_r(0.0) == 0.0);
    CHECK(db_to_r(20.0) == doctest::Approx(2.0 * db_to_r(10.0)).epsilon(1e-15));
    CHECK(db_to_r(-3.0) == doctest::Approx(-db_to_r(3.0)).epsilon(1e-15));
}

TEST_CASE("state PSD matrices") {
    CHECK(max_abs(state_psd_matrix(LightState::vacuum()) - 0.5 * Mat2::Identity()) == 0.0);
    const double r = 0.6;
    const Mat2 s = state_psd_matrix(LightState::squeezed(r, 0.0));
    CHECK(s(0, 0).real() == doctest::Approx(0.5 * std::exp(2 * r)));
    CHECK(s(1, 1).real() == doctest::Approx(0.5 * std::exp(-2 * r)));
    CHECK(std::abs(s(0, 1)) < 1e-15);
    const Mat2 t = state_psd_matrix(LightState::squeezed(0.8, 1.1));
    CHECK(t.determinant().real() == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("readout and cross PSD") {
    Vec2 y(1.0, 0.0), z(0.0, 1.0), yi(1.0, cplx(0.0, 1.0));
    CHECK(readout_psd(y, LightState::vacuum()) == doctest::Approx(0.5));
    CHECK(readout_psd(yi, LightState::vacuum()) == doctest::Approx(1.0));
    CHECK(readout_psd(y, LightState::squeezed(1.0, 0.0)) == doctest::Approx(std::exp(2.0) / 2));
    const LightState sq = LightState::squeezed(0.7, 0.3);
    CHECK(cross_psd(yi, yi, sq).real() == doctest::Approx(readout_psd(yi, sq)));
    CHECK(std::abs(cross_psd(y, z, LightState::vacuum())) < 1e-16);
    // Sign follows the squeeze-matrix convention P[phi] diag(e^r, e^-r) P[-phi].
    const double r = 0.9;
    CHECK(cross_psd(y, z, LightState::squeezed(r, pi / 4)).real() ==
          doctest::Approx(std::sinh(2 * r) / 2).epsilon(1e-13));
}

TEST_CASE("mirror matrix") {
    Mat2 full;
    full << -1.0, 0.0, 0.0, 1.0;
    CHECK(max_abs(mirror_matrix({1.0, 0.0}) - full) == 0.0);
    const Mat2 bs = mirror_matrix({0.5, 0.5});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(std::abs(bs(i, j)) - 1.0 / std::sqrt(2.0)) < 1e-15);
    for (auto conv : {MirrorSpec::Convention::real, MirrorSpec::Convention::symmetric}) {
        const Mat2 m = mirror_matrix({0.3, 0.7, conv});
        CHECK(max_abs(m.adjoint() * m - Mat2::Identity()) < 1e-15);
    }
    CHECK_THROWS_AS(mirror_matrix({0.5, 0.6}), ConfigError);
}

TEST_CASE("propagation") {
    const Vec2 e(cplx(0.3, 0.1), cplx(-0.2, 0.5));
    CHECK((propagate(e, 0.0, 1e15, 100.0) - e).norm() == 0.0);
    // omega0 L / c = 2 pi, Omega L / c = pi
    const double L = 3.0;
    const double w0 = 2.0 * pi * c_light / L;
    const double W = pi * c_light / L;
    CHECK((propagate(e, L, w0, W) + e).norm() < 1e-12);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const Vec2 v(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        CHECK(propagate(v, 100.0 * (u(rng) + 1.0), omega_nd_yag, 1e3 * u(rng)).norm() ==
              doctest::Approx(v.norm()).epsilon(1e-14));
    }
}

TEST_CASE("loss element") {
    const Vec2 e(1.0, 2.0), n(0.3, -0.4);
    CHECK((apply_loss(e, 0.0, n) - e).norm() == 0.0);
    CHECK((apply_loss(e, 1e-4, Vec2::Zero()) - (1.0 - 1e-4) * e).norm() < 1e-15);
    // Vacuum in, vacuum noise added: the output PSD stays 1/2 I.
    for (double eps : {0.01, 0.05, 0.1}) {
        const double k = 1.0 - eps;
        const double out = k * k * 0.5 + (1.0 - k * k) * 0.5;
        CHECK(out == doctest::Approx(0.5).epsilon(1e-15));
        const Vec2 a = apply_loss(Vec2(1.0, 0.0), eps, Vec2::Zero());
        const Vec2 b = apply_loss(Vec2::Zero(), eps, Vec2(1.0, 0.0));
        CHECK(a.squaredNorm() + b.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("movable mirror") {
    MovableMirrorMeter m;
    m.M = 1.0;
    m.omega_p = 1.77e15;
    m.I1 = 1.0;
    m.I2 = 1.0;
    m.Phi0 = pi / 2;
    CHECK(ponderomotive_rigidity(m) == doctest::Approx(oracle::mirror_K_ref).epsilon(1e-12));
    m.Phi0 = 0.0;
    CHECK(ponderomotive_rigidity(m) == 0.0);
    m.Phi0 = 0.4;
    m.I2 = 0.0;
    CHECK(ponderomotive_rigidity(m) == 0.0);

    // Two pumps, two readouts.
    MovableMirrorMeter two = m;
    two.I2 = 2.0;
    two.phi1 = 0.3;
    two.phi2 = 1.2;
    const MirrorNoise p = movable_mirror_noise_partials(two, 2 * pi * 50);

    // Full transfer matrices agree with the partial-density route.
    const MirrorNoise full = movable_mirror_noise(two, LightState::coherent(), LightState::coherent(), 2 * pi * 50);
    CHECK(full.S11 == doctest::Approx(p.S11).epsilon(1e-10));
    CHECK(full.S22 == doctest::Approx(p.S22).epsilon(1e-10));

    // One pump, phase readout: the free-mass sum noise at the optimum power
    // reaches the SQL from above.
    MovableMirrorMeter one = m;
    one.phi1 = pi / 2;
    const MirrorNoise q = movable_mirror_noise(one, LightState::coherent(), LightState::coherent(), 2 * pi * 50);
    CHECK(q.S11 >= hbar * one.M * std::pow(2 * pi * 50, 2) * (1.0 - 1e-12));
}
