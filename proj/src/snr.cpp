#include "qnb/snr.hpp"

#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qnb {

namespace {

num::QuadResult checked_log_integral(const Spectrum& S, const SignalModel& sig, double rel_tol) {
    if (!(sig.f_min > 0.0 && sig.f_max > sig.f_min)) throw ConfigError("signal: need 0 < f_min < f_max");
    auto f = [&](double w) {
        const double s = S(w);
        if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("snr: spectral density must be positive and finite");
        return sig.weight(w) / s;
    };
    const num::QuadResult q = num::integrate_log(f, two_pi_f(sig.f_min), two_pi_f(sig.f_max), rel_tol, 0.5);
    if (!q.converged) throw NumericalError("snr: integration tolerance not met");
    return q;
}

// Runs the simplex from each seed, then restarts from the best point until the
// optimum stops moving (at most `restarts` times).
num::MinimizeResult multistart(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<std::vector<double>>& seeds, const std::vector<double>& step,
                               double size_tol, int restarts, int& iterations) {
    num::MinimizeResult best;
    best.f = std::numeric_limits<double>::infinity();
    iterations = 0;
    for (const auto& x0 : seeds) {
        num::MinimizeResult r = num::minimize(f, x0, step, size_tol);
        iterations += r.iterations;
        if (r.f < best.f) best = r;
    }
    for (int k = 0; k < restarts; ++k) {
        num::MinimizeResult r = num::minimize(f, best.x, step, size_tol);
        iterations += r.iterations;
        // A restart that cannot move the objective means the incumbent is
        // stationary, even if a flat direction kept the simplex from shrinking.
        const bool same = std::abs(r.f - best.f) <= 1e-12 * std::abs(best.f);
        if (r.f < best.f) best = r;
        if (same) {
            best.converged = true;
            break;
        }
    }
    return best;
}

}  // namespace

double SignalModel::weight(double Omega) const {
    switch (kind) {
        case Kind::inspiral:
            return std::pow(Omega, -7.0 / 3.0);
        case Kind::burst:
            return 1.0 / Omega;
        case Kind::flat:
            return 1.0;
    }
    return 0.0;
}

double snr_integral(const Spectrum& S, const SignalModel& sig, double rel_tol) {
    return checked_log_integral(S, sig, rel_tol).value / (2.0 * pi);
}

double snr_ratio(const Spectrum& A, const Spectrum& B, const SignalModel& sig, double rel_tol) {
    return snr_integral(A, sig, rel_tol) / snr_integral(B, sig, rel_tol);
}

double sigma2_narrowband(double lambda, double s) {
    if (s < 0.0) throw ConfigError("sigma2_narrowband: s must be >= 0");
    const double l2 = lambda * lambda;
    const double a = 1.0 + 2.0 * s * s + l2 * l2;
    return 1.0 / (std::sqrt(2.0) * std::sqrt(a * (std::sqrt(a) - l2)));
}

double sigma2_narrowband_quadrature(double lambda, double s, double rel_tol) {
    const double l2 = lambda * lambda;
    const double c = 1.0 + 2.0 * s * s;
    auto f = [&](double y) {
        const double a = 4.0 * y * y - l2;
        return 1.0 / (a * a + c);
    };
    const double knee = std::max(std::abs(lambda), 1.0);
    num::QuadResult near = num::integrate_panels(f, {0.0, 0.5 * std::abs(lambda), knee}, rel_tol);
    num::QuadResult tail = num::integrate(f, knee, std::numeric_limits<double>::infinity(), rel_tol);
    if (!near.converged || !tail.converged) throw NumericalError("sigma2_narrowband_quadrature: no convergence");
    return 4.0 / pi * (near.value + tail.value);
}

Sigma2Optimum sigma2_optimal(double xi_tech) {
    if (!(xi_tech > 0.0)) throw ConfigError("sigma2_optimal: xi_tech must be > 0");
    Sigma2Optimum o;
    o.sigma2_opt = 1.0 / (2.0 * std::sqrt(2.0) * xi_tech);
    o.sigma2_sub = 1.0 / (std::sqrt(6.0 * std::sqrt(3.0)) * xi_tech);
    o.Lambda_over_Omega0 = xi_tech;
    o.Omega_q_over_Omega0 = xi_tech;
    return o;
}

double sigma2_pole_quadrature(const PoleRegimeParams& p, double eps, double gamma, double phi_LO,
                              double rel_tol) {
    if (!(p.Omega0 > 0.0 && p.Omega_q > 0.0)) throw ConfigError("sigma2_pole_quadrature: needs Omega0, Omega_q > 0");
    auto f = [&](double nu) { return 1.0 / (second_order_pole_xi2(p, nu, eps, gamma, phi_LO) + p.xi_tech2); };
    const double knee = std::max(std::abs(p.Lambda), p.Omega_q);
    num::QuadResult near = num::integrate_panels(f, {0.0, 0.5 * std::abs(p.Lambda), knee}, rel_tol);
    num::QuadResult tail = num::integrate(f, knee, std::numeric_limits<double>::infinity(), rel_tol);
    if (!near.converged || !tail.converged) throw NumericalError("sigma2_pole_quadrature: no convergence");
    return 2.0 * (near.value + tail.value) / (pi * p.Omega0);
}

double OptimizationResult::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw ConfigError("OptimizationResult: no parameter " + name);
}

double filter_snr_gain(const FilterOptimizationSetup& s, double gamma_f1, double delta_f) {
    const FilterCavityConfig fc = filter_from_rates(gamma_f1, delta_f, s.specific_loss);
    const EffectiveIfo& ifo = s.ifo;
    auto filtered = [&](double w) { return filtered_sum_noise(ifo, fc, s.scheme, s.r, s.eps_d, w); };
    auto ordinary = [&](double w) {
        return caves_sum_noise_h(ifo.J, ifo.gamma(), 0.0, s.eps_d, ifo.M, ifo.L, w);
    };
    return snr_ratio(filtered, ordinary, s.signal, 1e-8);
}

OptimizationResult optimize_filter_cavity(const FilterOptimizationSetup& s) {
    const double g0 = gamma_f0(s.ifo);
    // x = (ln(gamma_f1 / g0), delta_f / gamma_f1). Very wide cavities act as a
    // frequency-independent rotation by atan2(2 rho, 1 - rho^2), rho = delta_f / gamma_f1,
    // which wins once the filter loss is high; the last two seeds start on that branch.
    auto obj = [&](const std::vector<double>& x) {
        if (std::abs(x[0]) > 12.0) return std::numeric_limits<double>::infinity();
        const double gf1 = g0 * std::exp(x[0]);
        return -filter_snr_gain(s, gf1, gf1 * x[1]);
    };
    const std::vector<std::vector<double>> seeds{
        {0.0, 1.0}, {std::log(2.0), 1.0}, {-std::log(2.0), 1.0}, {10.0, 0.5}, {10.0, -0.5}};
    int iters = 0;
    const num::MinimizeResult m = multistart(obj, seeds, {0.2, 0.2}, 1e-7, 3, iters);

    OptimizationResult out;
    const double gf1 = g0 * std::exp(m.x[0]);
    const double df = gf1 * m.x[1];
    out.params = {{"gamma_f1", gf1}, {"delta_f", df}, {"gamma_f0", g0}};
    out.objective = -m.f;
    out.iterations = iters;
    out.converged = m.converged;
    out.tolerance = 1e-7;
    // The filter degenerates to a fixed rotation when its angle barely varies in band.
    const FilterCavityConfig fc = filter_from_rates(gf1, df, s.specific_loss);
    const auto angles = rotation_angles(fc, [&] {
        std::vector<double> w;
        for (double f : num::grid(s.signal.f_min, s.signal.f_max, 200, true)) w.push_back(two_pi_f(f));
        return w;
    }());
    const auto [lo, hi] = std::minmax_element(angles.begin(), angles.end());
    out.at_boundary = *hi - *lo < 0.05;
    return out;
}

double sigma2_burst(const EffectiveIfo& ifo, double phi_LO, double eta_d, double xi_tech2, double rel_tol) {
    const double w0 = pole_frequency(ifo.J);
    const double sql0 = 4.0 * hbar / (ifo.M * ifo.L * ifo.L * w0 * w0);
    const double tech = sql0 * xi_tech2;
    auto f = [&](double w) { return 1.0 / (w * (detuned_sum_noise_h(ifo, phi_LO, eta_d, w) + tech)); };
    const num::QuadResult q = num::integrate_log(f, w0 * std::exp(-6.0), w0 * std::exp(6.0), rel_tol, 0.1);
    if (!q.converged) throw NumericalError("sigma2_burst: integration tolerance not met");
    // Both signs of Omega contribute equally.
    return sql0 / (2.0 * pi) * 2.0 * q.value;
}

OptimizationResult optimize_burst_snr(const BurstOptimizationSetup& s) {
    if (!(s.xi_tech2 > 0.0)) throw ConfigError("optimize_burst_snr: xi_tech2 must be > 0");
    const double w0 = pole_frequency(s.J);
    auto make_ifo = [&](const std::vector<double>& x, EffectiveIfo& ifo) {
        const double G = std::exp(x[0]);
        const double b = std::atan(std::exp(x[1]));
        const double g = G * std::cos(b);
        if (!(g > s.gamma2)) return false;
        ifo.gamma1 = g - s.gamma2;
        ifo.gamma2 = s.gamma2;
        ifo.delta = G * std::sin(b);
        ifo.J = s.J;
        ifo.M = s.M;
        ifo.L = s.L;
        return true;
    };
    auto obj = [&](const std::vector<double>& x) {
        EffectiveIfo ifo;
        if (!make_ifo(x, ifo) || std::abs(x[0] - std::log(w0)) > 8.0) return 0.0;
        try {
            return -sigma2_burst(ifo, x[2], s.eta_d, s.xi_tech2);
        } catch (const NumericalError&) {
            return 0.0;
        }
    };
    // Seeds from the narrowband optimum: delta at the critical value, gamma from
    // Omega_q = Omega0 xi_tech for a few homodyne angles.
    std::vector<std::vector<double>> seeds;
    const double d0 = std::sqrt(2.0) * w0;
    for (double phi : {pi / 2.0, 0.9, 0.3}) {
        for (double mult : {1.0, 3.0}) {
            const double c = std::cos(phi);
            const double g0 = std::max(w0 * s.xi_tech2 / (std::sqrt(2.0) * (1.0 + c * c)), 1.0) * mult + s.gamma2;
            seeds.push_back({std::log(std::hypot(g0, d0)), std::log(d0 / g0), phi});
        }
    }
    int iters = 0;
    const num::MinimizeResult m = multistart(obj, seeds, {0.1, 0.3, 0.2}, 1e-6, 3, iters);

    OptimizationResult out;
    const double G = std::exp(m.x[0]);
    const double b = std::atan(std::exp(m.x[1]));
    out.params = {{"Gamma", G}, {"beta", b}, {"phi_LO", m.x[2]}, {"gamma", G * std::cos(b)},
                  {"delta", G * std::sin(b)}, {"Omega0", w0}};
    out.objective = -m.f;
    out.iterations = iters;
    out.converged = m.converged;
    out.tolerance = 1e-6;
    return out;
}

OptimizationResult optimize_pole_sigma2(double xi_tech2, bool free_lambda) {
    if (!(xi_tech2 > 0.0)) throw ConfigError("optimize_pole_sigma2: xi_tech2 must be > 0");
    const double xt = std::sqrt(xi_tech2);
    // Frequencies in units of Omega0; x = ln(Omega_q), ln(Lambda). A smaller
    // simplex size drowns in the quadrature noise of the flat optimum.
    auto obj = [&](const std::vector<double>& x) {
        PoleRegimeParams p{1.0, free_lambda ? std::exp(x[1]) : 0.0, std::exp(x[0]), xi_tech2};
        return -sigma2_pole_quadrature(p, 0.0, 0.0, 0.0, 1e-11);
    };
    std::vector<std::vector<double>> seeds;
    for (double m : {0.5, 2.0}) {
        if (free_lambda)
            seeds.push_back({std::log(m * xt), std::log(xt / m)});
        else
            seeds.push_back({std::log(m * xt)});
    }
    const std::vector<double> step(free_lambda ? 2 : 1, 0.3);
    int iters = 0;
    const num::MinimizeResult m = multistart(obj, seeds, step, 1e-6, 3, iters);

    OptimizationResult out;
    out.params = {{"Omega_q/Omega0", std::exp(m.x[0])}, {"Lambda/Omega0", free_lambda ? std::exp(m.x[1]) : 0.0}};
    out.objective = -m.f;
    out.iterations = iters;
    out.converged = m.converged;
    out.tolerance = 1e-6;
    return out;
}

}  // namespace qnb
