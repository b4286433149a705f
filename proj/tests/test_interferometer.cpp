#include "oracles.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/cavity.hpp"
#include "qnb/interferometer.hpp"

#include <doctest.h>

#include <random>

using namespace qnb;

static double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

static double unitarity_residual(const CavityRates& r, double W) {
    const CavityMatrices m = cavity_matrices(r, W);
    const Mat2 I = Mat2::Identity();
    return std::max({max_abs(m.R1 * m.R1.adjoint() + m.T * m.T.adjoint() - I),
                     max_abs(m.R2 * m.R2.adjoint() + m.T * m.T.adjoint() - I),
                     max_abs(m.R1 * m.T.adjoint() + m.T * m.R2.adjoint())});
}

TEST_CASE("cavity matrices") {
    const CavityMatrices z = cavity_matrices({100.0, 50.0, 0.0}, 2 * pi * 30);
    for (const Mat2* m : {&z.L, &z.R1, &z.R2, &z.T}) {
        CHECK(std::abs((*m)(0, 1)) < 1e-15);
        CHECK(std::abs((*m)(1, 0)) < 1e-15);
        CHECK(std::abs((*m)(0, 0) - (*m)(1, 1)) < 1e-15);
    }
    CHECK(max_abs(cavity_matrices({100.0, 0.0, 0.0}, 0.0).R1 - Mat2::Identity()) < 1e-15);
    CHECK(unitarity_residual({100.0, 50.0, 300.0}, 2 * pi * 77) < 1e-12);
}

TEST_CASE("optical rigidity") {
    const double M = 40.0, J = oracle::J_ref;
    CHECK(std::abs(fp_rigidity({300.0, 0.0, 0.0}, M, J, 100.0)) == 0.0);
    const CavityRates r{300.0, 20.0, 500.0};
    const cplx K0 = fp_rigidity(r, M, J, 0.0);
    CHECK(K0.real() == doctest::Approx(M * J * 500.0 / (320.0 * 320.0 + 500.0 * 500.0)).epsilon(1e-14));
    CHECK(K0.imag() == 0.0);
}

TEST_CASE("coupling J from arm power") {
    // Single arm cavity circulating I_c = 2 I_arm reproduces the interferometer J.
    CavityParams p;
    p.M = 40.0;
    p.L = 4000.0;
    p.Ic = 2.0 * 840e3;
    p.omega_p = omega_nd_yag;
    CHECK(p.J() == doctest::Approx(oracle::J_ref).epsilon(0.02));
    InterferometerConfig ic;
    CHECK(scaling_law(ic).J == doctest::Approx(oracle::J_ref).epsilon(0.02));
}

TEST_CASE("response vectors") {
    CavityParams p;
    p.T1 = 0.014;
    p.A = 1e-5;
    p.Ic = 1e5;
    p.omega_p = omega_nd_yag;
    const ResponseVectors v = fp_response_vectors(p, cplx(3.0, 0.0), 2 * pi * 40);
    CHECK(std::abs(v.R1(0)) < 1e-12 * std::abs(v.R1(1)));
    const ResponseVectors w = fp_response_vectors(p, cplx(6.0, 0.0), 2 * pi * 40);
    CHECK(w.R1.norm() == doctest::Approx(2.0 * v.R1.norm()).epsilon(1e-14));
    p.T1 = 0.0;
    CHECK(fp_response_vectors(p, cplx(3.0, 0.0), 2 * pi * 40).R1.norm() == 0.0);
}

TEST_CASE("exact two-mirror cavity") {
    ExactFpSpec s;
    s.R1 = 0.9;
    s.T1 = 0.1;
    s.R2 = 0.8;
    s.T2 = 0.2;
    s.L = 10.0;
    s.omega_p = omega_nd_yag;
    s.delta = 1e6;
    ExactFpDrive d;
    d.A1 = cplx(1.0, 0.5);
    d.A2 = cplx(-0.3, 0.2);
    const ExactFpFields f = exact_fp_io(s, d, 0.0);
    CHECK(std::norm(f.B1) + std::norm(f.B2) ==
          doctest::Approx(std::norm(d.A1) + std::norm(d.A2)).epsilon(1e-12));

    // Single-mode limit.
    ExactFpSpec t;
    t.R1 = 0.99;
    t.T1 = 0.01;
    t.L = 4000.0;
    t.omega_p = omega_nd_yag;
    const double tau = t.L / c_light;
    t.delta = 1e-4 / tau;
    const double W = 1e-4 / tau;
    const ExactFpQuadratures q = exact_fp_quadratures(t, W);
    const CavityMatrices m = cavity_matrices({t.T1 / (4 * tau), 0.0, t.delta}, W);
    CHECK(max_abs(q.R1 - m.R1) < 5.0 * t.T1);
}

TEST_CASE("scaling law") {
    InterferometerConfig c;
    c.delta_arm = 17.0;
    const double g1arm = c.T_arm * c_light / (4.0 * c.L);
    EffectiveIfo e = scaling_law(c);
    CHECK(e.gamma1 == doctest::Approx(g1arm).epsilon(1e-15));
    CHECK(e.delta == doctest::Approx(17.0).epsilon(1e-15));
    c.delta_arm = 0.0;
    c.R_S = 0.81;
    e = scaling_law(c);
    CHECK(e.gamma1 / g1arm == doctest::Approx(oracle::sr_gamma1_ratio).epsilon(1e-12));
    c.phi_S = pi / 4;
    e = scaling_law(c);
    CHECK(e.delta == doctest::Approx(2.0 * g1arm * 0.9 / 1.81).epsilon(1e-12));
}

static EffectiveIfo ifo(double g1, double g2, double d) {
    EffectiveIfo e;
    e.gamma1 = g1;
    e.gamma2 = g2;
    e.delta = d;
    e.J = oracle::J_ref;
    return e;
}

TEST_CASE("noise triple") {
    const double hb2 = hbar * hbar / 4.0;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const EffectiveIfo e = ifo(500 + 3000 * u(rng), 0.0, 3000 * (u(rng) - 0.5));
        const double phi = pi * u(rng);
        const double W = 2 * pi * (5.0 + 500 * u(rng));
        const NoiseTriple t = fpmi_noise_triple(e, phi, LightState::vacuum(), 1.0, W);
        CHECK((t.Sxx * t.Sff - std::norm(t.Sxf)) / hb2 == doctest::Approx(1.0).epsilon(1e-10));
    }
    const EffectiveIfo e = ifo(2 * pi * 500, 0.0, 0.0);
    const double W = 2 * pi * 80;
    const NoiseTriple t = fpmi_noise_triple(e, pi / 2, LightState::vacuum(), 1.0, W);
    CHECK(std::abs(t.Sxf) < 1e-15 * hbar);
    CHECK(t.Sff == doctest::Approx(hbar * e.M * W * W * oracle::calK(e.J, e.gamma(), W) / 2).epsilon(1e-12));
}

TEST_CASE("sum noise two routes and Caves form") {
    const EffectiveIfo e = ifo(2 * pi * 500, 0.0, 0.0);
    const double r = oracle::r_10db;
    for (double f : {5.0, 30.0, 100.0, 700.0, 4000.0}) {
        const double W = 2 * pi * f;
        const LightState sq = LightState::squeezed(r, 0.0);
        const double a = sum_noise_h(e, pi / 2, sq, 0.95, W);
        const double b = sum_noise_h_from_triple(e, fpmi_noise_triple(e, pi / 2, sq, 0.95, W), W);
        CHECK(oracle::rel(a, b) < 1e-10);
        CHECK(oracle::rel(a, oracle::caves(e.J, e.gamma(), r, 1 / 0.95 - 1, e.M, e.L, W)) < 1e-10);
        CHECK(oracle::rel(caves_sum_noise_h(e.J, e.gamma(), r, oracle::eps_d_095, e.M, e.L, W),
                          oracle::caves(e.J, e.gamma(), r, 1 / 0.95 - 1, e.M, e.L, W)) < 1e-12);
    }
    // Shot-dominated regime scales as e^-2r.
    const double W = 10 * e.gamma();
    const double ratio = sum_noise_h(e, pi / 2, LightState::squeezed(0.5, 0.0), 1.0, W) /
                         sum_noise_h(e, pi / 2, LightState::vacuum(), 1.0, W);
    CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
    CHECK_THROWS_AS(sum_noise_h(e, pi / 2, LightState::vacuum(), 1.0, 0.0), SingularFrequencyError);
}

TEST_CASE("detuned closed form and unified efficiency") {
    EffectiveIfo e = ifo(2 * pi * 500, 0.0, 0.0);
    UnifiedEfficiency u = lossy_redefinition(e, 1.0);
    CHECK(u.eta == 1.0);
    CHECK(u.eps == 0.0);
    e.gamma2 = e.gamma1;
    u = lossy_redefinition(e, 1.0);
    CHECK(u.eta == doctest::Approx(0.5));
    CHECK(u.eps == doctest::Approx(1.0));
    e.gamma2 = 1.875;
    CHECK(lossy_redefinition(e, 0.95).eps == doctest::Approx(oracle::eps_d_095).epsilon(2e-3));

    // beta = 0 reduces to the resonance-tuned triple.
    const double W = 2 * pi * 60;
    const EffectiveIfo t = ifo(2 * pi * 500, 0.0, 0.0);
    const NoiseTriple a = detuned_noise_triple(t.Gamma(), 0.0, 1.1, 1.0, t.J, t.M, W);
    const NoiseTriple b = fpmi_noise_triple(t, 1.1, LightState::vacuum(), 1.0, W);
    CHECK(oracle::rel(a.Sxx, b.Sxx) < 1e-10);
    CHECK(oracle::rel(a.Sff, b.Sff) < 1e-10);
    CHECK(std::abs(a.Sxf - b.Sxf) < 1e-10 * std::abs(b.Sxf));
    const NoiseTriple c = detuned_noise_triple(3100.0, 0.8, 0.9, 1.0, t.J, t.M, W);
    CHECK((c.Sxx * c.Sff - std::norm(c.Sxf)) / (hbar * hbar / 4) == doctest::Approx(1.0).epsilon(1e-10));
    const NoiseTriple h = detuned_noise_triple(3100.0, 0.8, pi / 2, 1.0, t.J, t.M, 1e7);
    CHECK(std::abs(h.Sxf) < 1e-3 * hbar);

    // Closed-form detuned noise equals the transfer-matrix route.
    const EffectiveIfo d = ifo(2157.9, 1.875, 2223.8);
    for (double f : {10.0, 100.0, 1000.0}) {
        const double Wf = 2 * pi * f;
        CHECK(oracle::rel(detuned_sum_noise_h(d, 1.13, 0.95, Wf),
                          sum_noise_h(d, 1.13, LightState::vacuum(), 0.95, Wf)) < 1e-9);
    }
}
