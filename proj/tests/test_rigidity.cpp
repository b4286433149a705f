#include "oracles.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/baselines.hpp"
#include "qnb/cavity.hpp"
#include "qnb/numerics.hpp"
#include "qnb/rigidity.hpp"

#include <doctest.h>

using namespace qnb;

TEST_CASE("characteristic roots without damping") {
    const double d = 2 * pi * 100;
    for (double j : {0.01, 0.1, 0.2, 0.24}) {
        const double J = j * d * d * d;
        const auto r = characteristic_roots(J, 0.0, d);
        const auto ref = oracle::roots_gamma0(J, d);
        CHECK(std::abs(r[0].value - ref.first) / d < 1e-10);
        CHECK(std::abs(r[1].value - ref.second) / d < 1e-10);
        CHECK(r[0].label == CharacteristicRoot::Label::mechanical);
    }
    const auto m = characteristic_roots(d * d * d / 4, 0.0, d);
    CHECK(m[0].label == CharacteristicRoot::Label::merged);
    CHECK(std::abs(m[0].value - d / std::sqrt(2.0)) / d < 1e-9);
    CHECK_THROWS_AS(characteristic_roots(1.0, 0.0, -1.0), ConfigError);
}

TEST_CASE("approximate roots with weak damping") {
    const double d = 2 * pi * 100, g = 0.03 * d;
    for (double j = 0.005; j <= 0.2 + 1e-12; j += 0.005) {
        const double J = j * d * d * d;
        const auto r = characteristic_roots(J, g, d);
        const auto a = approximate_roots(J, g, d);
        CHECK(std::abs(r[0].value - a[0]) / std::abs(r[0].value) < 0.03);
        CHECK(std::abs(r[1].value - a[1]) / std::abs(r[1].value) < 0.03);
        CHECK(r[0].value.imag() > 0.0);
        CHECK(r[1].value.imag() < 0.0);
    }
}

TEST_CASE("effective susceptibility") {
    DetunedRegime free{0.0, 300.0, 500.0};
    const double M = 40.0, W = 2 * pi * 50;
    CHECK(std::abs(effective_susceptibility(free, M, W) + 1.0 / (M * W * W)) < 1e-15);

    // Poles of the susceptibility are the characteristic roots.
    DetunedRegime d{0.05 * std::pow(2 * pi * 100, 3), 0.03 * 2 * pi * 100, 2 * pi * 100};
    const auto r = characteristic_roots(d.J, d.gamma, d.delta);
    for (const auto& root : r) {
        const cplx z = root.value;
        const cplx D = (d.gamma - cplx(0, 1) * z) * (d.gamma - cplx(0, 1) * z) + d.delta * d.delta;
        CHECK(std::abs(M * d.J * d.delta / D - M * z * z) / std::abs(M * z * z) < 1e-10);
    }

    // Local form near the second-order pole.
    const double J = oracle::J_ref;
    DetunedRegime crit{J, 0.0, pole_detuning(J)};
    const double W0 = pole_frequency(J);
    CHECK(W0 == doctest::Approx(pole_detuning(J) / std::sqrt(2.0)).epsilon(1e-14));
    // The local form drops the factor (delta^2 - Omega^2) / Omega0^2 = 1 - (Omega^2 - Omega0^2) / Omega0^2,
    // so it stays within 1% only for |Omega - Omega0| <= 0.004 Omega0.
    for (double x : {-0.03, -0.01, -0.004, 0.004, 0.01, 0.03}) {
        const double Wx = W0 * (1 + x);
        const double full = std::abs(effective_susceptibility(crit, M, Wx));
        const double local = second_order_pole_susceptibility(W0, M, Wx);
        CHECK(full / local == doctest::Approx(1 - (Wx * Wx - W0 * W0) / (W0 * W0)).epsilon(1e-8));
        if (std::abs(x) <= 0.004) CHECK(oracle::rel(local, full) < 0.01);
    }
}

TEST_CASE("bad-cavity SQL beating") {
    const double q2 = std::pow(2 * pi * 300, 2);
    const double W0 = 2 * pi * 60;
    // Optimal beta solves the printed fifth-order condition and minimizes xi^2.
    const double b = optimal_beta(q2, 1.0, W0);
    CHECK(std::abs(optimal_beta_residual(q2, 1.0, W0, b)) < 1e-9);
    auto f = [&](const std::vector<double>& x) { return bad_cavity_xi2_quadrature(q2, x[0], 1.0, W0); };
    const auto m = num::minimize(f, {b + 0.05}, {0.02}, 1e-12);
    CHECK(m.x[0] == doctest::Approx(b).epsilon(1e-5));
    CHECK(b == doctest::Approx(pi / 2 - 2 * W0 * W0 / q2).epsilon(0.02));
    // Envelope approximation far from resonance.
    const double W = 0.1 * std::sqrt(q2);
    CHECK(bad_cavity_envelope(q2, 1.0, W) == doctest::Approx(2 * W * W / q2).epsilon(0.05));
    // Detection loss barely shifts the envelope.
    for (double Wf : {0.05, 0.1, 0.2}) {
        const double Wx = Wf * std::sqrt(q2);
        CHECK(bad_cavity_envelope(q2, 0.95, Wx) / bad_cavity_envelope(q2, 1.0, Wx) < 1.1);
    }
}

TEST_CASE("instability time") {
    const double J = oracle::J_ref, g = 10.0;
    CHECK(std::isinf(instability_time(J, g, 0.0)));
    CHECK(instability_time(J, g, 1e-9) / instability_time(J, g, 1e-6) == doctest::Approx(1000.0).epsilon(1e-6));
    CHECK(instability_time(2 * J, g, 300.0) == doctest::Approx(instability_time(J, g, 300.0) / 2));
    // Growth rate of the mechanical root.
    const double d = 2 * pi * 100;
    const double Jw = 0.02 * d * d * d;
    const auto r = characteristic_roots(Jw, 0.01 * d, d);
    CHECK(r[0].value.imag() * 2 * instability_time(Jw, 0.01 * d, d) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("dual-carrier rigidity") {
    const double M = 40.0, W = 2 * pi * 10;
    const Carrier c1{1e8, 50.0, 500.0};
    const Carrier off{0.0, 3000.0, -2000.0};
    CHECK(std::abs(dual_carrier_rigidity(c1, off, M, W).K_sum - fp_rigidity({50.0, 0.0, 500.0}, M, 1e8, W)) == 0.0);
    const Carrier mirror{1e8, 50.0, -500.0};
    CHECK(std::abs(dual_carrier_rigidity(c1, mirror, M, W).K_sum) < 1e-12 * std::abs(fp_rigidity({50.0, 0.0, 500.0}, M, 1e8, W)));
    // A narrow positive detuning plus a broad negative one: positive spring and damping.
    bool found = false;
    for (double J2 = 1e7; J2 <= 1e9 && !found; J2 *= 2)
        for (double g2 = 500.0; g2 <= 8000.0 && !found; g2 *= 1.5) {
            const auto k = dual_carrier_rigidity(c1, {J2, g2, -g2}, M, 1.0);
            found = k.stable && k.K_sum.real() > 0 && k.K_sum.imag() < 0;
        }
    CHECK(found);
}

TEST_CASE("second-order pole narrowband") {
    PoleRegimeParams p{1.0, 0.0, 0.0, 0.0};
    const double dW = 0.02;
    p.Omega_q = dW;
    CHECK(second_order_pole_xi2(p, dW / 2) == doctest::Approx(dW * dW).epsilon(1e-12));
    p.Omega_q = 0.1;
    CHECK(second_order_pole_xi2(p, 0.0) == doctest::Approx(0.01 / 2).epsilon(1e-14));
    // Inside the dip the pole beats the oscillator at equal Omega_q.
    for (double nu : {0.01, 0.02, 0.04}) CHECK(second_order_pole_xi2(p, nu) < oscillator_xi2_nb(1.0, 0.1, nu));
    CHECK(pole_omega_q2(10.0, 700.0, pi / 2) == doctest::Approx(std::sqrt(2.0) * 10 * 700).epsilon(1e-14));
}
