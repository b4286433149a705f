#include "oracles.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/filters.hpp"
#include "qnb/interferometer.hpp"
#include "qnb/rigidity.hpp"
#include "qnb/snr.hpp"

#include <doctest.h>

using namespace qnb;

TEST_CASE("SNR integrals") {
    const SignalModel sig = SignalModel::inspiral();
    const Spectrum a = [](double W) { return 1e-46 * (1.0 + std::pow(100.0 / W, 4) + W * W / 1e6); };
    CHECK(snr_ratio(a, a, sig) == doctest::Approx(1.0).epsilon(1e-14));
    const Spectrum half = [&](double W) { return 0.5 * a(W); };
    CHECK(snr_ratio(half, a, SignalModel::flat(10.0, 1000.0)) == doctest::Approx(2.0).epsilon(1e-12));
    // Flat weight, flat spectrum: the integral is the band width in dOmega / 2 pi.
    CHECK(snr_integral([](double) { return 2.0; }, SignalModel::flat(10.0, 1000.0)) ==
          doctest::Approx(990.0 / 2.0).epsilon(1e-10));
    CHECK_THROWS_AS(snr_integral([](double) { return -1.0; }, sig), NumericalError);

    EffectiveIfo e;
    e.gamma1 = 2 * pi * 500;
    e.J = oracle::J_ref;
    const Spectrum ordinary = [&](double W) {
        return caves_sum_noise_h(e.J, e.gamma(), 0.0, oracle::eps_d_095, e.M, e.L, W);
    };
    const Spectrum squeezed = [&](double W) {
        return caves_sum_noise_h(e.J, e.gamma(), oracle::r_10db, oracle::eps_d_095, e.M, e.L, W);
    };
    CHECK(snr_ratio(squeezed, ordinary, sig) > 1.0);
}

TEST_CASE("narrowband sigma^2 closed form") {
    const double v[3] = {0.0, 0.5, 1.0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(oracle::rel(sigma2_narrowband(v[i], v[j]), oracle::sigma2_table[i][j]) < 1e-12);
            CHECK(oracle::rel(sigma2_narrowband_quadrature(v[i], v[j]), oracle::sigma2_table[i][j]) < 1e-8);
            CHECK(oracle::rel(sigma2_narrowband(v[i], v[j]), oracle::sigma2_closed(v[i], v[j])) < 1e-14);
        }
    CHECK(sigma2_narrowband(0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    // lambda^2 = sqrt((1 + 2 s^2) / 3) maximizes the factor.
    for (double s : {0.3, 1.0, 2.0}) {
        const double l = std::pow((1 + 2 * s * s) / 3, 0.25);
        CHECK(sigma2_narrowband(l, s) >= sigma2_narrowband(l * 1.01, s));
        CHECK(sigma2_narrowband(l, s) >= sigma2_narrowband(l * 0.99, s));
    }
}

TEST_CASE("optimal sigma^2") {
    const Sigma2Optimum o = sigma2_optimal(1.0);
    CHECK(o.sigma2_opt == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
    for (double xt : {0.1, 0.5, 1.0}) {
        const Sigma2Optimum p = sigma2_optimal(xt);
        CHECK(p.sigma2_sub / p.sigma2_opt == doctest::Approx(oracle::sigma2_sub_over_opt).epsilon(1e-13));
        CHECK(p.Lambda_over_Omega0 == doctest::Approx(xt));
        CHECK(p.Omega_q_over_Omega0 == doctest::Approx(xt));
    }
    // Test-side quadrature of the narrowband pole model at the optimum.
    const double xt = std::sqrt(0.1);
    PoleRegimeParams p{1.0, xt, xt, xt * xt};
    const double h = 1.0;
    auto f = [&](double t) {
        const double nu = h * std::tan(t);
        const double dnu = h / (std::cos(t) * std::cos(t));
        return dnu / (second_order_pole_xi2(p, nu) + xt * xt);
    };
    const double q = 2.0 / pi * oracle::simpson(f, 0.0, pi / 2 - 1e-9, 200000);
    CHECK(oracle::rel(sigma2_pole_quadrature(p), q) < 1e-6);
    CHECK(oracle::rel(q, 1.0 / (2 * std::sqrt(2.0) * xt)) < 1e-4);
    // Harmonic oscillator reference.
    CHECK(sigma2_optimal(1.0).sigma2_opt < 1.0);
}

TEST_CASE("narrowband optimization") {
    for (double x2 : {0.01, 0.1, 1.0}) {
        const double xt = std::sqrt(x2);
        const OptimizationResult full = optimize_pole_sigma2(x2, true);
        CHECK(full.converged);
        CHECK(oracle::rel(full.objective, 1.0 / (2 * std::sqrt(2.0) * xt)) < 0.02);
        const OptimizationResult sub = optimize_pole_sigma2(x2, false);
        CHECK(oracle::rel(sub.objective, 1.0 / (std::sqrt(6 * std::sqrt(3.0)) * xt)) < 0.02);
    }
}

TEST_CASE("filter cavity optimization") {
    FilterOptimizationSetup s;
    s.ifo.gamma1 = 2 * pi * 500;
    s.ifo.J = oracle::J_ref;
    s.r = oracle::r_10db;
    s.eps_d = oracle::eps_d_095;
    s.specific_loss = 1e-9;
    const OptimizationResult r = optimize_filter_cavity(s);
    CHECK(r.converged);
    CHECK(r.param("gamma_f1") == doctest::Approx(oracle::gamma_f0_ref).epsilon(0.05));
    CHECK(r.param("delta_f") == doctest::Approx(oracle::gamma_f0_ref).epsilon(0.05));

    // Heavy loss: the optimum degenerates to squeezing at the best constant angle.
    s.specific_loss = 1e-5;
    const OptimizationResult h = optimize_filter_cavity(s);
    CHECK(h.converged);
    CHECK(h.at_boundary);
    const Spectrum ord = [&](double W) {
        return caves_sum_noise_h(s.ifo.J, s.ifo.gamma(), 0.0, s.eps_d, s.ifo.M, s.ifo.L, W);
    };
    double best = 0.0;
    for (int i = 0; i <= 180; ++i) {
        const double th = pi * i / 180.0;
        const Spectrum sq = [&](double W) {
            return sum_noise_h(s.ifo, pi / 2, LightState::squeezed(s.r, th), 0.95, W);
        };
        best = std::max(best, snr_ratio(sq, ord, s.signal));
    }
    CHECK(h.objective == doctest::Approx(best).epsilon(0.01));
    CHECK(h.objective > 1.3 * snr_ratio([&](double W) {
        return caves_sum_noise_h(s.ifo.J, s.ifo.gamma(), s.r, s.eps_d, s.ifo.M, s.ifo.L, W);
    }, ord, s.signal));

    // Post beats pre at low loss; pre beats post at high loss.
    auto gain = [&](FilterScheme sc, double loss) {
        FilterOptimizationSetup t = s;
        t.scheme = sc;
        t.specific_loss = loss;
        return optimize_filter_cavity(t).objective;
    };
    CHECK(gain(FilterScheme::post, 1e-9) > gain(FilterScheme::pre, 1e-9));
    CHECK(gain(FilterScheme::pre, 1e-6) > gain(FilterScheme::post, 1e-6));
}
